"""Finite-field brute force: B(F_q)-orbits on G/H for small matrix groups.

Ground truth for the combinatorial layer.  Points of G/H are canonical
coset labels (the lexicographically smallest matrix in the coset under
row-major order), orbits come from union-find over generator actions,
and merge structure under each subminimal parabolic P_alpha is read off
the same way.  Orbit sizes fitted to c * q^a * (q-1)^b across several
primes give dimension and rank proxies from which a candidate datum is
inferred; RI and N stay indistinguishable to point counts and are
flagged, never silently resolved.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from itertools import product as iproduct

import numpy as np

from .coxeter import RootSystem, build_root_system
from .datum import Orbit, OrbitDatum, RaiseCell, datum_to_obj, validate

DEFAULT_POINT_CAP = 10**7
DEFAULT_Q_LIST = (5, 7)
_FIT_EXPONENT_BOUND = 24


class OracleError(RuntimeError):
    """Bad oracle spec, resource cap hit, or structurally unusable data."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _det_mod(mat: tuple[tuple[int, ...], ...], q: int) -> int:
    n = len(mat)
    if n == 1:
        return mat[0][0] % q
    total = 0
    for j in range(n):
        minor = tuple(row[:j] + row[j + 1:] for row in mat[1:])
        term = mat[0][j] * _det_mod(minor, q)
        total += -term if j % 2 else term
    return total % q


@dataclass(frozen=True)
class MatGroupSpec:
    """Generators over F_q for G, its Borel B, the subgroup H, and the
    subminimal parabolics, all as integer matrices taken mod q."""

    name: str
    root_system: str
    q: int
    dimension: int
    g_gens: tuple[tuple[tuple[int, ...], ...], ...]
    b_gens: tuple[tuple[tuple[int, ...], ...], ...]
    h_gens: tuple[tuple[tuple[int, ...], ...], ...]
    parabolics: dict[int, tuple[tuple[tuple[int, ...], ...], ...]]
    fixed_q: bool
    notes: tuple[str, ...] = ()


def _as_matrices(raw, dimension: int, q: int, where: str):
    out = []
    for mat in raw:
        if len(mat) != dimension or any(len(row) != dimension for row in mat):
            raise OracleError(f"{where}: matrix is not {dimension}x{dimension}")
        reduced = tuple(tuple(int(x) % q for x in row) for row in mat)
        if _det_mod(reduced, q) == 0:
            raise OracleError(f"{where}: singular generator {reduced} mod {q}")
        out.append(reduced)
    if not out:
        raise OracleError(f"{where}: no generators")
    return tuple(out)


def spec_from_obj(obj: dict, q: int) -> MatGroupSpec:
    """Build a spec at the working prime q.

    Files with "q": null are generic (entries reduced mod q); files that
    pin a prime can only be loaded at that prime.
    """
    required = {"name", "root_system", "q", "dimension", "generators"}
    unknown = set(obj) - required - {"notes"}
    if unknown:
        raise OracleError(f"unknown spec fields: {sorted(unknown)}")
    missing = required - set(obj)
    if missing:
        raise OracleError(f"missing spec fields: {sorted(missing)}")
    if not _is_prime(q):
        raise OracleError(f"q = {q} is not prime")
    pinned = obj["q"]
    if pinned is not None and int(pinned) != q:
        raise OracleError(
            f"spec {obj['name']!r} is pinned to q = {pinned}, cannot load at q = {q}")
    dim = int(obj["dimension"])
    gens = obj["generators"]
    unknown = set(gens) - {"G", "B", "H", "P"}
    if unknown:
        raise OracleError(f"unknown generator blocks: {sorted(unknown)}")
    rs = build_root_system(obj["root_system"])
    parabolics = {}
    for key, mats in gens.get("P", {}).items():
        alpha = int(key)
        if not 1 <= alpha <= rs.rank:
            raise OracleError(f"parabolic index {key} outside 1..{rs.rank}")
        parabolics[alpha] = _as_matrices(mats, dim, q, f"P_{alpha} generators")
    return MatGroupSpec(
        name=str(obj["name"]),
        root_system=obj["root_system"],
        q=q,
        dimension=dim,
        g_gens=_as_matrices(gens["G"], dim, q, "G generators"),
        b_gens=_as_matrices(gens["B"], dim, q, "B generators"),
        h_gens=_as_matrices(gens["H"], dim, q, "H generators"),
        parabolics=parabolics,
        fixed_q=pinned is not None,
        notes=tuple(obj.get("notes", ())),
    )


def load_spec(text: str, q: int) -> MatGroupSpec:
    return spec_from_obj(json.loads(text), q)


def _closure(gens: np.ndarray, q: int, cap: int, what: str) -> np.ndarray:
    """All products of the generators, BFS order from the identity."""
    k = gens.shape[1]
    layers = [np.eye(k, dtype=np.int64)[None, :, :]]
    seen = {layers[0][0].astype(np.uint8).tobytes()}
    frontier = layers[0]
    while frontier.shape[0]:
        prods = np.einsum("aij,bjk->abik", frontier, gens) % q
        prods = prods.reshape(-1, k, k)
        flat = prods.astype(np.uint8).reshape(-1, k * k)
        fresh = []
        for i in range(flat.shape[0]):
            b = flat[i].tobytes()
            if b not in seen:
                seen.add(b)
                fresh.append(prods[i])
        if len(seen) > cap:
            raise OracleError(f"{what} closure exceeds cap {cap}")
        if not fresh:
            break
        frontier = np.stack(fresh)
        layers.append(frontier)
    return np.concatenate(layers)


def _byte_set(arr: np.ndarray) -> set[bytes]:
    k = arr.shape[1]
    flat = arr.astype(np.uint8).reshape(-1, k * k)
    return {flat[i].tobytes() for i in range(flat.shape[0])}


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i: int, j: int) -> None:
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            self.parent[max(ri, rj)] = min(ri, rj)


@dataclass(frozen=True)
class OrbitInfo:
    representative: str
    size: int


@dataclass(frozen=True)
class OracleReport:
    """One enumeration run at one prime."""

    spec_name: str
    root_system: str
    q: int
    group_order: int
    subgroup_order: int
    point_count: int
    orbits: tuple[OrbitInfo, ...]
    merges: dict[int, tuple[tuple[int, ...], ...]]

    @property
    def orbit_count(self) -> int:
        return len(self.orbits)

    def to_obj(self) -> dict:
        return {
            "spec": self.spec_name,
            "rootSystem": self.root_system,
            "q": self.q,
            "groupOrder": self.group_order,
            "subgroupOrder": self.subgroup_order,
            "pointCount": self.point_count,
            "orbitCount": self.orbit_count,
            "orbits": [{"representative": o.representative, "size": o.size}
                       for o in self.orbits],
            "merges": {str(a): [list(block) for block in blocks]
                       for a, blocks in sorted(self.merges.items())},
        }

    def lines(self) -> list[str]:
        out = [f"spec {self.spec_name} at q = {self.q}: "
               f"|G| = {self.group_order}, |H| = {self.subgroup_order}, "
               f"{self.point_count} points, {self.orbit_count} B-orbits"]
        for i, o in enumerate(self.orbits):
            out.append(f"  orbit {i}: size {o.size}, representative {o.representative}")
        for a, blocks in sorted(self.merges.items()):
            desc = " | ".join("{" + ",".join(map(str, b)) + "}" for b in blocks)
            out.append(f"  P_{a} classes: {desc}")
        return out


def _fmt_matrix(mat: np.ndarray) -> str:
    return "[" + ",".join(
        "[" + ",".join(str(int(x)) for x in row) + "]" for row in mat) + "]"


def enumerate_orbits(spec: MatGroupSpec,
                     cap: int = DEFAULT_POINT_CAP) -> OracleReport:
    """Enumerate B-orbits on G/H over F_q with canonical coset labels.

    Deterministic: cosets are named by their lex-minimal element, orbits
    sorted by (size, representative), merge blocks by first member.
    """
    q, k = spec.q, spec.dimension
    g_arr = np.array(spec.g_gens, dtype=np.int64)
    b_arr = np.array(spec.b_gens, dtype=np.int64)
    h_arr = np.array(spec.h_gens, dtype=np.int64)

    g_all = _closure(g_arr, q, cap, "G")
    g_bytes = _byte_set(g_all)
    h_all = _closure(h_arr, q, cap, "H")
    if not _byte_set(h_all) <= g_bytes:
        raise OracleError("H is not contained in the group generated by G")
    if not _byte_set(_closure(b_arr, q, cap, "B")) <= g_bytes:
        raise OracleError("B is not contained in the group generated by G")
    for alpha, mats in spec.parabolics.items():
        p_arr = np.array(mats, dtype=np.int64)
        if not _byte_set(_closure(p_arr, q, cap, f"P_{alpha}")) <= g_bytes:
            raise OracleError(f"P_{alpha} is not contained in the group generated by G")

    group_order = g_all.shape[0]
    subgroup_order = h_all.shape[0]
    if group_order % subgroup_order:
        raise OracleError("|H| does not divide |G|")
    expected_points = group_order // subgroup_order

    def canon(mat: np.ndarray) -> tuple[bytes, np.ndarray]:
        prods = np.einsum("ij,njk->nik", mat, h_all) % q
        flat = prods.reshape(-1, k * k)
        best = int(np.lexsort(flat[:, ::-1].T)[0])
        return flat[best].astype(np.uint8).tobytes(), prods[best]

    ident = np.eye(k, dtype=np.int64)
    key0, label0 = canon(ident)
    labels = [label0]
    index = {key0: 0}
    frontier = [0]
    while frontier:
        nxt = []
        for i in frontier:
            for g in g_arr:
                key, label = canon(g @ labels[i] % q)
                if key not in index:
                    if len(index) + 1 > cap:
                        raise OracleError(f"coset count exceeds cap {cap}")
                    index[key] = len(labels)
                    labels.append(label)
                    nxt.append(index[key])
        frontier = nxt
    if len(labels) != expected_points:
        raise OracleError(
            f"coset enumeration found {len(labels)} points, "
            f"expected |G|/|H| = {expected_points}")

    def partition_under(gen_arr: np.ndarray) -> _UnionFind:
        uf = _UnionFind(len(labels))
        for i, lab in enumerate(labels):
            for g in gen_arr:
                key, _ = canon(g @ lab % q)
                uf.union(i, index[key])
        return uf

    buf = partition_under(b_arr)
    classes: dict[int, list[int]] = {}
    for i in range(len(labels)):
        classes.setdefault(buf.find(i), []).append(i)

    def rep_key(members: list[int]) -> bytes:
        return min(labels[i].astype(np.uint8).tobytes() for i in members)

    ordered = sorted(classes.values(), key=lambda m: (len(m), rep_key(m)))
    orbit_of_coset = {}
    infos = []
    for oi, members in enumerate(ordered):
        for i in members:
            orbit_of_coset[i] = oi
        best = min(members, key=lambda i: labels[i].astype(np.uint8).tobytes())
        infos.append(OrbitInfo(representative=_fmt_matrix(labels[best]),
                               size=len(members)))
    total = sum(o.size for o in infos)
    if total != expected_points:
        raise OracleError(f"orbit sizes sum to {total}, not {expected_points}")

    merges: dict[int, tuple[tuple[int, ...], ...]] = {}
    for alpha, mats in sorted(spec.parabolics.items()):
        puf = partition_under(np.array(mats, dtype=np.int64))
        pclasses: dict[int, set[int]] = {}
        for i in range(len(labels)):
            pclasses.setdefault(puf.find(i), set()).add(orbit_of_coset[i])
        for root, orbset in pclasses.items():
            covered = sum(infos[oi].size for oi in orbset)
            members = [i for i in range(len(labels)) if puf.find(i) == root]
            if covered != len(members):
                raise OracleError(
                    f"P_{alpha} class is not a union of B-orbits")
        blocks = sorted(tuple(sorted(s)) for s in pclasses.values())
        merges[alpha] = tuple(blocks)
    return OracleReport(spec_name=spec.name, root_system=spec.root_system,
                        q=q, group_order=group_order,
                        subgroup_order=subgroup_order,
                        point_count=expected_points,
                        orbits=tuple(infos), merges=merges)


def merge_structure(spec: MatGroupSpec, alpha: int,
                    cap: int = DEFAULT_POINT_CAP) -> tuple[tuple[int, ...], ...]:
    """Partition of B-orbit indices into common P_alpha-orbit classes."""
    report = enumerate_orbits(spec, cap=cap)
    if alpha not in report.merges:
        raise OracleError(f"spec has no P_{alpha} generators")
    return report.merges[alpha]


def fit_monomial(points: list[tuple[int, int]]) -> tuple[int, int, Fraction] | None:
    """Exponents (a, b) and positive rational c with size = c q^a (q-1)^b.

    Returns None when no monomial matches all (q, size) pairs; raises
    when several monomials do (not enough primes to pin one down).
    """
    if len(points) < 2:
        raise OracleError("monomial fit needs at least two primes")
    q0, s0 = points[0]
    hits = []
    for a, b in iproduct(range(_FIT_EXPONENT_BOUND), repeat=2):
        denom = q0**a * (q0 - 1) ** b
        c = Fraction(s0, denom)
        if c <= 0:
            continue
        if all(c * q**a * (q - 1) ** b == s for q, s in points[1:]):
            hits.append((a, b, c))
    if not hits:
        return None
    if len(hits) > 1:
        raise OracleError(f"ambiguous monomial fit {hits}; add more primes")
    return hits[0]


@dataclass(frozen=True)
class InferredDatum:
    """Candidate datum plus everything point counts could not decide."""

    datum: OrbitDatum | None
    notes: tuple[str, ...]
    point_counts: tuple[tuple[str, tuple[tuple[int, int], ...]], ...]
    fits: tuple[tuple[str, tuple[int, int, Fraction]], ...]

    def to_obj(self) -> dict:
        return {
            "datum": None if self.datum is None else datum_to_obj(self.datum),
            "confidence": list(self.notes),
            "pointCounts": {name: {str(q): s for q, s in counts}
                            for name, counts in self.point_counts},
            "fits": {name: {"a": a, "b": b, "c": str(c)}
                     for name, (a, b, c) in self.fits},
        }


def align_reports(reports: list[OracleReport]) -> list[OracleReport]:
    """Permute orbit indices within equal-size ties so merge partitions
    agree with the first report; refuse if no alignment exists."""
    base = reports[0]
    out = [base]
    for rep in reports[1:]:
        groups: dict[int, list[int]] = {}
        for i, o in enumerate(rep.orbits):
            groups.setdefault(o.size, []).append(i)

        def candidates():
            keys = sorted(groups)
            pools = [list(permutations(groups[kk])) for kk in keys]
            for combo in iproduct(*pools):
                perm = {}
                for kk, arrangement in zip(keys, combo):
                    for src, dst in zip(groups[kk], arrangement):
                        perm[src] = dst
                yield perm

        aligned = None
        for perm in candidates():
            remapped = {a: tuple(sorted(tuple(sorted(perm[i] for i in block))
                                        for block in blocks))
                        for a, blocks in rep.merges.items()}
            if remapped == base.merges:
                order = [perm[i] for i in range(len(rep.orbits))]
                inverse = [0] * len(order)
                for src, dst in enumerate(order):
                    inverse[dst] = src
                new_orbits = tuple(rep.orbits[inverse[i]]
                                   for i in range(len(rep.orbits)))
                aligned = OracleReport(
                    spec_name=rep.spec_name, root_system=rep.root_system,
                    q=rep.q, group_order=rep.group_order,
                    subgroup_order=rep.subgroup_order,
                    point_count=rep.point_count,
                    orbits=new_orbits, merges=remapped)
                break
        if aligned is None:
            raise OracleError(
                f"merge structure at q = {rep.q} is not isomorphic to q = {base.q}")
        out.append(aligned)
    return out


def infer_datum(reports: list[OracleReport], rs: RootSystem) -> InferredDatum:
    """Turn enumeration runs over several primes into a candidate datum.

    Orbit dims and ranks come from the fitted exponents (dim = a + b,
    rk = b); cell kinds come from merge classes.  Complexity and the
    s-invariant are invisible to point counts and set to 0, with notes.
    """
    if len(reports) < 2:
        raise OracleError("infer needs reports for at least two distinct primes")
    qs = [r.q for r in reports]
    if len(set(qs)) != len(qs):
        raise OracleError("infer needs distinct primes")
    for q in qs:
        if q < 5:
            raise OracleError(
                f"q = {q} rejected: small characteristic degenerates the action")
    counts = {r.orbit_count for r in reports}
    if len(counts) != 1:
        raise OracleError(
            f"not polynomial-stable at these primes: orbit counts {sorted(counts)}")
    names = {r.root_system for r in reports}
    if len(names) != 1:
        raise OracleError(f"reports disagree on root system: {sorted(names)}")
    if build_root_system(names.pop()).key != rs.key:
        raise OracleError("reports were produced for a different root system")
    reports = align_reports(list(reports))
    n = reports[0].orbit_count

    notes = ["c and s are invisible to point counts; both set to 0"]
    fits: list[tuple[int, int, Fraction] | None] = []
    for i in range(n):
        points = [(r.q, r.orbits[i].size) for r in reports]
        fits.append(fit_monomial(points))

    if any(f is None for f in fits):
        bad = [i for i, f in enumerate(fits) if f is None]
        for i in bad:
            notes.append(f"orbit {i} unclassified: no monomial size fit")
        return InferredDatum(datum=None, notes=tuple(notes),
                             point_counts=(), fits=())

    dims = [a + b for a, b, _ in fits]
    order = sorted(range(n), key=lambda i: (-dims[i], reports[0].orbits[i].size, i))
    name_of = {pos: f"o{rank + 1}" for rank, pos in enumerate(order)}
    top = max(dims)
    if dims.count(top) != 1:
        raise OracleError("open orbit is not unique: top dimension ties")

    orbits = []
    for pos in order:
        a, b, c = fits[pos]
        orbits.append(Orbit(name_of[pos], dims[pos], 0, b, 0,
                            open=dims[pos] == top))
        notes.append(f"{name_of[pos]}: size(q) = {c} * q^{a} * (q-1)^{b}")

    cells: dict[int, list[RaiseCell]] = {}
    for alpha, blocks in sorted(reports[0].merges.items()):
        row: list[RaiseCell] = []
        for block in blocks:
            members = sorted(block, key=lambda i: -dims[i])
            ids = [name_of[i] for i in members]
            if len(block) == 1:
                row.append(RaiseCell(alpha, "A", y=ids[0]))
                continue
            if len(block) == 2:
                hi, lo = members
                if dims[hi] == dims[lo]:
                    raise OracleError(
                        f"P_{alpha} pair with equal dims {ids}: not a raise")
                bh, bl = fits[hi][1], fits[lo][1]
                if bh == bl:
                    row.append(RaiseCell(alpha, "U", y=ids[0], z=ids[1]))
                elif bh - bl == 1:
                    row.append(RaiseCell(alpha, "RI", y=ids[0], z=ids[1]))
                    notes.append(
                        f"cell alpha {alpha} {{{ids[0]}, {ids[1]}}}: kind RI|N "
                        "ambiguous (stabilizer connectedness is invisible "
                        "to point counts); recorded as RI")
                else:
                    raise OracleError(
                        f"P_{alpha} pair {ids}: rank proxies differ by {bh - bl}")
                continue
            if len(block) == 3:
                y, z1, z2 = members
                if dims[z1] == dims[z2]:
                    row.append(RaiseCell(alpha, "RT", y=ids[0],
                                         z1=ids[1], z2=ids[2]))
                elif dims[y] > dims[z1] > dims[z2]:
                    row.append(RaiseCell(alpha, "TU", y=ids[0],
                                         z1=ids[1], z2=ids[2]))
                else:
                    raise OracleError(
                        f"P_{alpha} triple {ids}: dims {dims[y]},{dims[z1]},"
                        f"{dims[z2]} fit neither RT nor TU")
                continue
            raise OracleError(
                f"P_{alpha} class with {len(block)} B-orbits is out of scope")
        cells[alpha] = row

    datum = OrbitDatum(rs, tuple(orbits),
                       {a: tuple(row) for a, row in cells.items()})
    report = validate(datum)
    if not report.ok:
        notes.extend("inferred datum fails validation: " + line
                     for line in report.lines())
    point_counts = tuple(
        (name_of[pos], tuple((r.q, r.orbits[pos].size) for r in reports))
        for pos in order)
    fit_rows = tuple((name_of[pos], fits[pos]) for pos in order)
    return InferredDatum(datum=datum, notes=tuple(notes),
                         point_counts=point_counts, fits=fit_rows)


_KINDCLASS = {"RI": "RI|N", "N": "RI|N"}


def _kindclass(kind: str) -> str:
    return _KINDCLASS.get(kind, kind)


@dataclass(frozen=True)
class CompareReport:
    match: bool
    lines: tuple[str, ...]


def _signature(d: OrbitDatum, oid: str):
    sig = []
    for alpha in sorted(d.cells):
        here = []
        for cell in d.cells[alpha]:
            if oid not in cell.members():
                continue
            role = cell.role_of(oid)
            if cell.kind == "RT" and role in ("z1", "z2"):
                role = "z"
            here.append((_kindclass(cell.kind), role))
        sig.append((alpha, tuple(sorted(here))))
    return tuple(sig)


def compare(reference: OrbitDatum, candidate: OrbitDatum) -> CompareReport:
    """Isomorphism test of the cell-labeled raise structures.

    Kinds are compared up to the RI|N ambiguity; orbit ids may differ.
    A structure-preserving bijection is searched for, then dim/rk/c/s
    are checked through it.  Lattice data is outside what the oracle
    can see and is not compared.
    """
    lines: list[str] = []
    if reference.root_system.key != candidate.root_system.key:
        lines.append(f"root system mismatch: {reference.root_system.to_text()} "
                     f"vs {candidate.root_system.to_text()}")
        return CompareReport(match=False, lines=tuple(lines))
    a_ids, b_ids = reference.orbit_ids(), candidate.orbit_ids()
    if len(a_ids) != len(b_ids):
        lines.append(f"orbit count mismatch: {len(a_ids)} vs {len(b_ids)}")
        return CompareReport(match=False, lines=tuple(lines))
    for alpha in sorted(reference.cells):
        ka = sorted(_kindclass(c.kind) for c in reference.cells.get(alpha, ()))
        kb = sorted(_kindclass(c.kind) for c in candidate.cells.get(alpha, ()))
        if ka != kb:
            lines.append(f"cell kind mismatch at alpha {alpha}: "
                         f"{ka} vs {kb} (RI and N identified)")
    if lines:
        return CompareReport(match=False, lines=tuple(lines))

    b_cells = {}
    for alpha, cells in candidate.cells.items():
        for cell in cells:
            b_cells[(alpha, frozenset(cell.members()))] = cell

    sig_a = {oid: (_signature(reference, oid), reference.orbit(oid).open)
             for oid in a_ids}
    sig_b = {oid: (_signature(candidate, oid), candidate.orbit(oid).open)
             for oid in b_ids}

    def cells_ok(mapping: dict[str, str]) -> bool:
        for alpha, cells in reference.cells.items():
            for cell in cells:
                mapped = frozenset(mapping[m] for m in cell.members())
                other = b_cells.get((alpha, mapped))
                if other is None or _kindclass(other.kind) != _kindclass(cell.kind):
                    return False
                if other.role_of(mapping[cell.y]) != "y":
                    return False
                if cell.kind == "TU":
                    if mapping[cell.z1] != other.z1 or mapping[cell.z2] != other.z2:
                        return False
        return True

    found: dict[str, str] | None = None

    def backtrack(i: int, mapping: dict[str, str], used: set[str]) -> bool:
        if i == len(a_ids):
            return cells_ok(mapping)
        src = a_ids[i]
        for dst in b_ids:
            if dst in used or sig_b[dst] != sig_a[src]:
                continue
            mapping[src] = dst
            used.add(dst)
            if backtrack(i + 1, mapping, used):
                return True
            used.discard(dst)
            del mapping[src]
        return False

    mapping: dict[str, str] = {}
    if backtrack(0, mapping, set()):
        found = dict(mapping)
    if found is None:
        lines.append("no structure-preserving bijection of orbits exists")
        return CompareReport(match=False, lines=tuple(lines))

    for src in a_ids:
        ra, rb = reference.orbit(src), candidate.orbit(found[src])
        for field in ("dim", "rk", "c", "s"):
            va, vb = getattr(ra, field), getattr(rb, field)
            if va != vb:
                lines.append(f"invariant mismatch: {field}({src}) = {va} "
                             f"vs {field}({found[src]}) = {vb}")
    return CompareReport(match=not lines, lines=tuple(lines))
