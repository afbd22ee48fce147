"""Access to the data files shipped with the package."""

from __future__ import annotations

from importlib import resources

from .datum import OrbitDatum, loads

#: Rank-1 kind suite plus the two worked multi-root examples.
DATUM_NAMES = (
    "rank1_u", "rank1_tu", "rank1_a", "rank1_rt", "rank1_ri", "rank1_n",
    "sl3_so12", "product_a1a1",
)

ORACLE_SPEC_NAMES = (
    "torus", "torus_normalizer", "horospherical",
    "product_diag_q5", "product_diag_q7",
)


def _data_root():
    return resources.files("weylorb") / "data"


def datum_text(name: str) -> str:
    if name not in DATUM_NAMES:
        raise KeyError(f"no bundled datum named {name!r}")
    return (_data_root() / f"{name}.json").read_text(encoding="utf-8")


def bundled_datum(name: str) -> OrbitDatum:
    """Load a bundled datum by name.

    >>> bundled_datum("rank1_u").open_orbit().id
    'y'
    """
    return loads(datum_text(name))


def oracle_spec_text(name: str) -> str:
    if name not in ORACLE_SPEC_NAMES:
        raise KeyError(f"no bundled oracle spec named {name!r}")
    return (_data_root() / "oracle" / f"{name}.json").read_text(encoding="utf-8")


def bundled_path(name: str) -> str:
    """Filesystem path of a bundled datum file (for CLI examples)."""
    if name in DATUM_NAMES:
        return str(_data_root() / f"{name}.json")
    if name in ORACLE_SPEC_NAMES:
        return str(_data_root() / "oracle" / f"{name}.json")
    raise KeyError(f"no bundled file named {name!r}")
