"""Orbit data: finitely many orbit families with exact invariants.

An :class:`OrbitDatum` records, for one restricted root system, the set of
orbit families with their integer invariants (dim, c, rk, s, optional
character lattice) and, for every simple root alpha, a partition of the
orbit set into raise cells of the six kinds U, TU, A, RT, RI, N.  Each
kind constrains ranks and dimensions inside its cell and induces an
involution sigma(alpha, .) of the orbit set:

    U  : y <-> z          TU : y fixed, z1 <-> z2      A  : y fixed
    RT : y fixed, z1 <-> z2    RI : both fixed         N  : both fixed

The validator checks every cell constraint, open-orbit dominance in the
lexicographic (c, rk, s) order, and lattice ranks; it reports violations
as data instead of raising.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction

from .coxeter import (
    RootSystem,
    RootSystemError,
    build_root_system,
    enumerate_group,
    word_name,
)

KINDS = ("U", "TU", "A", "RT", "RI", "N")

#: Member roles carried by each cell kind, in serialization order.
ROLES = {
    "U": ("y", "z"),
    "TU": ("y", "z1", "z2"),
    "A": ("y",),
    "RT": ("y", "z1", "z2"),
    "RI": ("y", "z"),
    "N": ("y", "z"),
}


class DatumFormatError(ValueError):
    """Structurally malformed datum input (parse-level rejection)."""


@dataclass(frozen=True)
class Orbit:
    id: str
    dim: int
    c: int
    rk: int
    s: int
    open: bool = False
    lattice: tuple[tuple[int, ...], ...] | None = None

    def invariants(self) -> tuple[int, int, int]:
        return (self.c, self.rk, self.s)


@dataclass(frozen=True)
class RaiseCell:
    alpha: int  # 1-based simple root index
    kind: str
    y: str
    z: str | None = None
    z1: str | None = None
    z2: str | None = None

    def members(self) -> tuple[str, ...]:
        return tuple(getattr(self, role) for role in ROLES[self.kind])

    def role_of(self, orbit_id: str) -> str:
        for role in ROLES[self.kind]:
            if getattr(self, role) == orbit_id:
                return role
        raise KeyError(orbit_id)

    def sigma(self, orbit_id: str) -> str:
        """Image of orbit_id under the cell involution."""
        if self.kind == "U":
            return self.z if orbit_id == self.y else self.y
        if self.kind in ("TU", "RT"):
            if orbit_id == self.z1:
                return self.z2
            if orbit_id == self.z2:
                return self.z1
            return orbit_id
        return orbit_id  # A, RI, N fix everything


@dataclass(frozen=True)
class Violation:
    code: str
    where: str
    message: str

    def line(self) -> str:
        return f"VIOLATION {self.code} at {self.where}: {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def lines(self) -> list[str]:
        if self.ok:
            return ["OK"]
        return [v.line() for v in self.violations]

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "violations": [
                {"code": v.code, "where": v.where, "message": v.message}
                for v in self.violations
            ],
        }


@dataclass
class OrbitDatum:
    root_system: RootSystem
    orbits: tuple[Orbit, ...]
    cells: dict[int, tuple[RaiseCell, ...]]
    notes: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        self.orbits = tuple(sorted(self.orbits, key=lambda o: (o.dim, o.id)))
        self.cells = {a: tuple(sorted(cs, key=lambda c: c.y))
                      for a, cs in sorted(self.cells.items())}
        self._by_id = {o.id: o for o in self.orbits}
        if len(self._by_id) != len(self.orbits):
            raise DatumFormatError("duplicate orbit ids")

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, OrbitDatum)
                and self.root_system == other.root_system
                and self.orbits == other.orbits
                and self.cells == other.cells
                and self.notes == other.notes)

    def orbit(self, orbit_id: str) -> Orbit:
        try:
            return self._by_id[orbit_id]
        except KeyError:
            raise DatumFormatError(f"unknown orbit id {orbit_id!r}") from None

    def orbit_ids(self) -> tuple[str, ...]:
        return tuple(o.id for o in self.orbits)

    def open_orbit(self) -> Orbit:
        opens = [o for o in self.orbits if o.open]
        if len(opens) != 1:
            raise DatumFormatError(f"expected exactly one open orbit, got {len(opens)}")
        return opens[0]

    def cell_of(self, alpha: int, orbit_id: str) -> RaiseCell:
        """The unique alpha-cell containing orbit_id (first hit if the
        partition is defective; validate reports such defects)."""
        for cell in self.cells.get(alpha, ()):
            if orbit_id in cell.members():
                return cell
        raise DatumFormatError(
            f"orbit {orbit_id!r} is not covered by any cell for alpha {alpha}")

    def sigma(self, alpha: int, orbit_id: str) -> str:
        """Involution of the orbit set attached to the simple root alpha."""
        self.orbit(orbit_id)
        return self.cell_of(alpha, orbit_id).sigma(orbit_id)


# -- exact linear algebra over Q --------------------------------------------


def _rref(rows: list[tuple[Fraction, ...]]) -> tuple[tuple[Fraction, ...], ...]:
    """Reduced row echelon form over Q; canonical for span comparison."""
    mat = [list(r) for r in rows]
    ncols = len(mat[0]) if mat else 0
    pivots = 0
    for col in range(ncols):
        pivot = next((r for r in range(pivots, len(mat)) if mat[r][col] != 0), None)
        if pivot is None:
            continue
        mat[pivots], mat[pivot] = mat[pivot], mat[pivots]
        pv = mat[pivots][col]
        mat[pivots] = [x / pv for x in mat[pivots]]
        for r in range(len(mat)):
            if r != pivots and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[pivots])]
        pivots += 1
    return tuple(tuple(row) for row in mat[:pivots])


def lattice_rank(lattice: tuple[tuple[int, ...], ...]) -> int:
    return len(_rref([tuple(Fraction(x) for x in row) for row in lattice]))


def _span_after(matrix, lattice) -> tuple[tuple[Fraction, ...], ...]:
    rows = []
    for row in lattice:
        rows.append(tuple(Fraction(sum(matrix[i][j] * row[j] for j in range(len(row))))
                          for i in range(len(matrix))))
    return _rref(list(rows))


def _span(lattice) -> tuple[tuple[Fraction, ...], ...]:
    return _rref([tuple(Fraction(x) for x in row) for row in lattice])


# -- validation --------------------------------------------------------------


def validate(d: OrbitDatum) -> ValidationReport:
    """Check every cell invariant, open-orbit dominance, and lattice ranks.

    Returns a report; an empty violation list means the datum is valid.
    """
    out: list[Violation] = []
    rank = d.root_system.rank

    opens = [o for o in d.orbits if o.open]
    if len(opens) != 1:
        out.append(Violation("open-orbit", "datum",
                             f"expected exactly one open orbit, found {len(opens)}"))
    open_orbit = opens[0] if len(opens) == 1 else None
    if open_orbit is not None:
        for o in d.orbits:
            if o.id != open_orbit.id and o.dim >= open_orbit.dim:
                out.append(Violation(
                    "open-orbit", o.id,
                    f"dim {o.dim} not strictly below open orbit dim {open_orbit.dim}"))

    ids = set(d.orbit_ids())
    for alpha in range(1, rank + 1):
        seen: dict[str, int] = {}
        for cell in d.cells.get(alpha, ()):
            for m in cell.members():
                seen[m] = seen.get(m, 0) + 1
        missing = sorted(ids - set(seen))
        extra = sorted(m for m, k in seen.items() if k > 1)
        if missing:
            out.append(Violation("partition-defect", f"alpha {alpha}",
                                 f"orbits not covered: {', '.join(missing)}"))
        if extra:
            out.append(Violation("partition-defect", f"alpha {alpha}",
                                 f"orbits covered more than once: {', '.join(extra)}"))
    for alpha in d.cells:
        if not 1 <= alpha <= rank:
            out.append(Violation("partition-defect", f"alpha {alpha}",
                                 f"no simple root with index {alpha} (rank {rank})"))

    for alpha, cells in d.cells.items():
        if not 1 <= alpha <= len(d.root_system.raise_dims):
            continue
        n_alpha = d.root_system.raise_dims[alpha - 1]
        for cell in cells:
            where = f"alpha {alpha} cell y={cell.y}"
            try:
                members = [d.orbit(m) for m in cell.members()]
            except DatumFormatError:
                out.append(Violation("partition-defect", where,
                                     "cell references an unknown orbit id"))
                continue
            y = members[0]
            for m in members[1:]:
                if m.dim >= y.dim:
                    out.append(Violation(
                        "cell-y-not-max", where,
                        f"{m.id} has dim {m.dim} >= y dim {y.dim}"))
            if cell.kind == "U":
                z = d.orbit(cell.z)
                if z.rk != y.rk:
                    out.append(Violation("cell-U-rank", where,
                                         f"rk(z)={z.rk} != rk(y)={y.rk}"))
                if z.s != y.s:
                    out.append(Violation("cell-U-s", where,
                                         f"s(z)={z.s} != s(y)={y.s}"))
                if y.dim != z.dim + n_alpha:
                    out.append(Violation(
                        "cell-U-dim", where,
                        f"dim(y)={y.dim} != dim(z)+n_alpha={z.dim}+{n_alpha}"))
            elif cell.kind == "TU":
                z1, z2 = d.orbit(cell.z1), d.orbit(cell.z2)
                if not (z1.rk == z2.rk == y.rk - 1):
                    out.append(Violation(
                        "cell-TU-rank", where,
                        f"rk(z1)={z1.rk}, rk(z2)={z2.rk}, expected rk(y)-1={y.rk - 1}"))
                if z1.s != z2.s:
                    out.append(Violation("cell-TU-s", where,
                                         f"s(z1)={z1.s} != s(z2)={z2.s}"))
                if not (y.dim > z1.dim > z2.dim):
                    out.append(Violation(
                        "cell-TU-dim", where,
                        f"need dim(y) > dim(z1) > dim(z2), got {y.dim}, {z1.dim}, {z2.dim}"))
            elif cell.kind == "RT":
                z1, z2 = d.orbit(cell.z1), d.orbit(cell.z2)
                if not (z1.rk == z2.rk == y.rk - 1):
                    out.append(Violation(
                        "cell-RT-rank", where,
                        f"rk(z1)={z1.rk}, rk(z2)={z2.rk}, expected rk(y)-1={y.rk - 1}"))
                if z1.dim != z2.dim:
                    out.append(Violation("cell-RT-dim", where,
                                         f"dim(z1)={z1.dim} != dim(z2)={z2.dim}"))
            elif cell.kind in ("RI", "N"):
                z = d.orbit(cell.z)
                if z.rk != y.rk - 1:
                    out.append(Violation(
                        f"cell-{cell.kind}-rank", where,
                        f"rk(z)={z.rk} != rk(y)-1={y.rk - 1}"))

    if open_orbit is not None:
        top = open_orbit.invariants()
        for o in d.orbits:
            if o.invariants() > top:
                out.append(Violation(
                    "lex-dominance", o.id,
                    f"(c,rk,s)={o.invariants()} exceeds open orbit {top}"))
            if o.c > open_orbit.c:
                out.append(Violation("complexity", o.id,
                                     f"c={o.c} exceeds open orbit c={open_orbit.c}"))

    for o in d.orbits:
        if o.lattice is None:
            continue
        if any(len(row) != rank for row in o.lattice):
            out.append(Violation("lattice-ambient", o.id,
                                 f"lattice rows must have length {rank}"))
            continue
        r = lattice_rank(o.lattice)
        if r != o.rk:
            out.append(Violation("lattice-rank", o.id,
                                 f"lattice rank {r} != rk {o.rk}"))

    return ValidationReport(tuple(out))


def check_lattices(d: OrbitDatum) -> ValidationReport:
    """Check reflection compatibility of the lattice spans cell by cell.

    Rules per kind: U moves span(y) to span(z); TU and RT fix span(y) and
    swap the z spans; A fixes span(y); RI and N fix both spans.  Cells
    with no lattice data are skipped; cells with partial data are
    reported.
    """
    out: list[Violation] = []
    rank = d.root_system.rank
    for o in d.orbits:
        if o.lattice is not None and any(len(row) != rank for row in o.lattice):
            raise DatumFormatError(
                f"orbit {o.id}: lattice ambient dimension differs from rank {rank}")

    for alpha, cells in sorted(d.cells.items()):
        if not 1 <= alpha <= rank:
            continue
        s_mat = d.root_system.simple_reflection(alpha - 1).matrix
        for cell in cells:
            where = f"alpha {alpha} cell y={cell.y}"
            members = [d.orbit(m) for m in cell.members()]
            have = [o for o in members if o.lattice is not None]
            if not have:
                continue
            if len(have) != len(members):
                out.append(Violation("lattice-partial", where,
                                     "partial lattice data in cell"))
                continue
            lat = {o.id: o.lattice for o in members}
            y = cell.y

            def moved(i):
                return _span_after(s_mat, lat[i])

            checks: list[tuple[str, str, str]] = []
            if cell.kind == "U":
                checks.append(("U", y, cell.z))
            elif cell.kind in ("TU", "RT"):
                checks.append((cell.kind, y, y))
                checks.append((cell.kind, cell.z1, cell.z2))
            elif cell.kind == "A":
                checks.append(("A", y, y))
            else:  # RI, N
                checks.append((cell.kind, y, y))
                checks.append((cell.kind, cell.z, cell.z))
            for kind, src, dst in checks:
                if moved(src) != _span(lat[dst]):
                    out.append(Violation(
                        f"lattice-span-{kind}", where,
                        f"s_alpha * span(Lambda({src})) != span(Lambda({dst}))"))
    return ValidationReport(tuple(out))


# -- flag datum --------------------------------------------------------------


def generate_flag_datum(rs: RootSystem) -> OrbitDatum:
    """The full flag datum: one orbit per Weyl group element.

    Orbit ids are canonical reduced words; dim(w) is the sum of the raise
    dims over the inversion lines of w; every cell is a U cell pairing w
    with its raise partner; all c, rk, s are 0 and the longest element is
    the open orbit.

    >>> d = generate_flag_datum(build_root_system("A", 1, raise_dims=[3]))
    >>> sorted(o.dim for o in d.orbits)
    [0, 3]
    """
    group = enumerate_group(rs)
    by_matrix = {w.matrix: w for w in group}
    ids = {w.matrix: word_name(w.word) for w in group}

    def dim_of(w) -> int:
        total = 0
        for line in rs.positive_lines:
            img = w.apply(line)
            if all(x <= 0 for x in img):
                total += rs.raise_dim_of_line(line)
        return total

    dims = {ids[w.matrix]: dim_of(w) for w in group}
    top = max(dims.values())
    orbits = tuple(
        Orbit(id=ids[w.matrix], dim=dims[ids[w.matrix]], c=0, rk=0, s=0,
              open=dims[ids[w.matrix]] == top)
        for w in group
    )

    cells: dict[int, tuple[RaiseCell, ...]] = {}
    for i in range(rs.rank):
        s_i = rs.simple_reflection(i)
        done: set[str] = set()
        cs = []
        for w in group:
            wid = ids[w.matrix]
            if wid in done:
                continue
            partner = by_matrix[(s_i * w).matrix]
            pid = ids[partner.matrix]
            y, z = (wid, pid) if dims[wid] > dims[pid] else (pid, wid)
            cs.append(RaiseCell(alpha=i + 1, kind="U", y=y, z=z))
            done.update((wid, pid))
        cells[i + 1] = tuple(cs)
    return OrbitDatum(root_system=rs, orbits=orbits, cells=cells)


# -- serialization -----------------------------------------------------------

_ORBIT_KEYS = {"id", "dim", "c", "rk", "s", "open", "lattice"}
_TOP_KEYS = {"root_system", "orbits", "cells", "notes"}
_RS_KEYS = {"family", "rank", "raise_dims"}


def _require_keys(obj: dict, allowed: set[str], where: str) -> None:
    unknown = sorted(set(obj) - allowed)
    if unknown:
        raise DatumFormatError(f"{where}: unknown field(s) {', '.join(unknown)}")


def _int_field(obj: dict, key: str, where: str, minimum: int = 0) -> int:
    v = obj.get(key)
    if not isinstance(v, int) or isinstance(v, bool) or v < minimum:
        raise DatumFormatError(f"{where}: field {key!r} must be an integer >= {minimum}")
    return v


def datum_to_obj(d: OrbitDatum) -> dict:
    orbits = []
    for o in d.orbits:
        entry: dict = {"id": o.id, "dim": o.dim, "c": o.c, "rk": o.rk,
                       "s": o.s, "open": o.open}
        if o.lattice is not None:
            entry["lattice"] = [list(row) for row in o.lattice]
        orbits.append(entry)
    cells = {}
    for alpha, cs in sorted(d.cells.items()):
        cells[str(alpha)] = [
            {"kind": c.kind, **{role: getattr(c, role) for role in ROLES[c.kind]}}
            for c in cs
        ]
    obj = {
        "root_system": {
            "family": d.root_system.family,
            "rank": d.root_system.rank,
            "raise_dims": list(d.root_system.raise_dims),
        },
        "orbits": orbits,
        "cells": cells,
    }
    if d.notes:
        obj["notes"] = list(d.notes)
    return obj


def dumps(d: OrbitDatum) -> str:
    """Deterministic serialization: sorted keys, sorted orbit lists."""
    return json.dumps(datum_to_obj(d), indent=2, sort_keys=True) + "\n"


def datum_from_obj(obj: dict) -> OrbitDatum:
    if not isinstance(obj, dict):
        raise DatumFormatError("datum must be a JSON object")
    _require_keys(obj, _TOP_KEYS, "datum")
    for key in ("root_system", "orbits", "cells"):
        if key not in obj:
            raise DatumFormatError(f"datum: missing field {key!r}")

    rs_obj = obj["root_system"]
    if not isinstance(rs_obj, dict):
        raise DatumFormatError("root_system must be an object")
    _require_keys(rs_obj, _RS_KEYS, "root_system")
    try:
        rs = build_root_system(
            rs_obj.get("family", ""),
            rs_obj.get("rank"),
            raise_dims=rs_obj.get("raise_dims"),
        )
    except RootSystemError as exc:
        raise DatumFormatError(f"root_system: {exc}") from exc

    if not isinstance(obj["orbits"], list) or not obj["orbits"]:
        raise DatumFormatError("orbits must be a non-empty list")
    orbits = []
    for i, entry in enumerate(obj["orbits"]):
        where = f"orbits[{i}]"
        if not isinstance(entry, dict):
            raise DatumFormatError(f"{where}: must be an object")
        _require_keys(entry, _ORBIT_KEYS, where)
        oid = entry.get("id")
        if not isinstance(oid, str) or not oid:
            raise DatumFormatError(f"{where}: id must be a non-empty string")
        lattice = None
        if "lattice" in entry:
            raw = entry["lattice"]
            if (not isinstance(raw, list)
                    or any(not isinstance(row, list) for row in raw)
                    or any(not isinstance(x, int) or isinstance(x, bool)
                           for row in raw for x in row)):
                raise DatumFormatError(f"{where}: lattice must be a list of integer rows")
            lattice = tuple(tuple(row) for row in raw)
        is_open = entry.get("open", False)
        if not isinstance(is_open, bool):
            raise DatumFormatError(f"{where}: open must be a boolean")
        orbits.append(Orbit(
            id=oid,
            dim=_int_field(entry, "dim", where),
            c=_int_field(entry, "c", where),
            rk=_int_field(entry, "rk", where),
            s=_int_field(entry, "s", where),
            open=is_open,
            lattice=lattice,
        ))
    ids = {o.id for o in orbits}
    if len(ids) != len(orbits):
        raise DatumFormatError("orbits: duplicate ids")

    cells_obj = obj["cells"]
    if not isinstance(cells_obj, dict):
        raise DatumFormatError("cells must be an object keyed by simple root index")
    cells: dict[int, tuple[RaiseCell, ...]] = {}
    for key, raw_cells in cells_obj.items():
        try:
            alpha = int(key)
        except (TypeError, ValueError):
            raise DatumFormatError(f"cells: bad simple root key {key!r}") from None
        if not 1 <= alpha <= rs.rank:
            raise DatumFormatError(
                f"cells: simple root index {alpha} out of range 1..{rs.rank}")
        if not isinstance(raw_cells, list):
            raise DatumFormatError(f"cells[{key}] must be a list")
        parsed = []
        for j, c in enumerate(raw_cells):
            where = f"cells[{key}][{j}]"
            if not isinstance(c, dict):
                raise DatumFormatError(f"{where}: must be an object")
            kind = c.get("kind")
            if kind not in KINDS:
                raise DatumFormatError(f"{where}: unknown kind {kind!r}")
            _require_keys(c, {"kind", *ROLES[kind]}, where)
            roles = {}
            for role in ROLES[kind]:
                v = c.get(role)
                if not isinstance(v, str):
                    raise DatumFormatError(f"{where}: missing role {role!r}")
                if v not in ids:
                    raise DatumFormatError(f"{where}: unknown orbit id {v!r}")
                roles[role] = v
            parsed.append(RaiseCell(alpha=alpha, kind=kind, **roles))
        cells[alpha] = tuple(parsed)

    notes = obj.get("notes", [])
    if (not isinstance(notes, list)
            or any(not isinstance(x, str) for x in notes)):
        raise DatumFormatError("notes must be a list of strings")

    return OrbitDatum(root_system=rs, orbits=tuple(orbits), cells=cells,
                      notes=tuple(notes))


def loads(text: str) -> OrbitDatum:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DatumFormatError(f"not valid JSON: {exc}") from exc
    return datum_from_obj(obj)


def load_path(path) -> OrbitDatum:
    with open(path, "r", encoding="utf-8") as fh:
        return loads(fh.read())


# -- DOT export --------------------------------------------------------------

_EDGE_STYLE = {"U": "solid", "TU": "solid", "RT": "solid",
               "RI": "dotted", "N": "dotted"}


def export_dot(d: OrbitDatum) -> str:
    """Deterministic Graphviz DOT text for the raise structure.

    Nodes are labeled ``id (dim|c,rk,s)``; U and TU chains appear as
    directed raise edges (y -> z, and z1 -> z2 for TU), RT as two raise
    edges, RI and N as dotted pairing edges, and A cells as comments.
    """
    lines = ["digraph orbit_datum {"]
    lines.append(f"  // root_system: {d.root_system.to_text()}")
    lines.append("  node [shape=box];")
    for o in d.orbits:
        label = f"{o.id} ({o.dim}|{o.c},{o.rk},{o.s})"
        lines.append(f'  "{o.id}" [label="{label}"];')
    for alpha, cells in sorted(d.cells.items()):
        for cell in cells:
            tag = f"a{alpha} {cell.kind}"
            style = _EDGE_STYLE.get(cell.kind)
            if cell.kind == "U":
                edges = [(cell.y, cell.z)]
            elif cell.kind == "TU":
                edges = [(cell.y, cell.z1), (cell.z1, cell.z2)]
            elif cell.kind == "RT":
                edges = [(cell.y, cell.z1), (cell.y, cell.z2)]
            elif cell.kind in ("RI", "N"):
                edges = [(cell.y, cell.z)]
            else:  # A
                lines.append(f"  // {tag} {{{cell.y}}}")
                continue
            for src, dst in edges:
                lines.append(
                    f'  "{src}" -> "{dst}" [label="{tag}", style={style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"
