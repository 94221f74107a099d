"""Exact-arithmetic engine for narrow naturally graded Lie algebras.

The heavy lifting lives in the compiled module `carnot._carnot`; this
package re-exports its surface.
"""

from ._carnot import (  # noqa: F401
    Algebra,
    aut_group_order_fp,
    build,
    central_extension,
    check_serre,
    family_registry,
    from_json,
    h2,
    h2_profile,
    iso_search_fp,
    match_to_catalog,
    tree,
)

__all__ = [
    "Algebra",
    "aut_group_order_fp",
    "build",
    "central_extension",
    "check_serre",
    "family_registry",
    "from_json",
    "h2",
    "h2_profile",
    "iso_search_fp",
    "match_to_catalog",
    "tree",
]
