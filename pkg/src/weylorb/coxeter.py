"""Restricted root systems and their finite Weyl groups, exactly.

Vectors are written in simple-root coordinates, i.e. ``v[i]`` is the
coefficient of the i-th simple root.  In that basis every Weyl group
element is an integer matrix and all comparisons are exact; no floats
appear anywhere.  The non-reduced family BC reuses the Weyl group of the
underlying B-type system and carries the doubled roots in its root list,
so lengths and reflections are counted per root line, one line per
{alpha, 2*alpha} class.

Products such as A1xA1 are block-diagonal compositions and are named by
their component tokens joined with "x".
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

Vector = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]

#: Default cap on group enumeration and subgroup closure (the order of W(E6)).
DEFAULT_GROUP_CAP = 51840

_SIMPLE_TOKEN = re.compile(r"^(BC|A|B|C|D|G2|F4)(\d*)$")


class RootSystemError(ValueError):
    """Invalid family, rank, or raise-dimension data."""


class CapExceeded(RuntimeError):
    """A group enumeration grew past the configured cap."""


def mat_identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum(ra[k] * cb[k] for k in range(n)) for cb in bt) for ra in a
    )


def mat_apply(m: Matrix, v: Vector) -> Vector:
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in m)


def mat_inverse(m: Matrix) -> Matrix:
    """Exact inverse of an integer matrix that is invertible over Z."""
    n = len(m)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(m)]
    for col in range(n):
        pivot = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    out = []
    for row in aug:
        vals = row[n:]
        if any(x.denominator != 1 for x in vals):
            raise ValueError("matrix is not invertible over the integers")
        out.append(tuple(int(x) for x in vals))
    return tuple(out)


def _is_nonneg(v: Vector) -> bool:
    return all(x >= 0 for x in v) and any(x != 0 for x in v)


def _cartan_and_lengths(fam: str, rank: int) -> tuple[list[list[int]], list[int]]:
    """Cartan matrix C[i][j] = <alpha_j, alpha_i-vee> and integer half
    square-lengths, per irreducible family (BC uses its B-type base)."""
    if rank < 1:
        raise RootSystemError(f"family {fam} needs rank >= 1, got {rank}")
    chain = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        chain[i][i] = 2
    for i in range(rank - 1):
        chain[i][i + 1] = chain[i + 1][i] = -1
    if fam == "A":
        return chain, [1] * rank
    if fam in ("B", "BC"):
        if rank >= 2:
            chain[rank - 2][rank - 1] = -1
            chain[rank - 1][rank - 2] = -2
        return chain, [2] * (rank - 1) + [1]
    if fam == "C":
        if rank >= 2:
            chain[rank - 2][rank - 1] = -2
            chain[rank - 1][rank - 2] = -1
        return chain, [1] * (rank - 1) + [2]
    if fam == "D":
        if rank < 2:
            raise RootSystemError("family D needs rank >= 2")
        c = [[0] * rank for _ in range(rank)]
        for i in range(rank):
            c[i][i] = 2
        for i in range(rank - 2):
            c[i][i + 1] = c[i + 1][i] = -1
        if rank >= 3:
            c[rank - 3][rank - 1] = c[rank - 1][rank - 3] = -1
        return c, [1] * rank
    if fam == "G2":
        if rank != 2:
            raise RootSystemError("G2 has rank 2")
        return [[2, -3], [-1, 2]], [1, 3]
    if fam == "F4":
        if rank != 4:
            raise RootSystemError("F4 has rank 4")
        c = [[2, -1, 0, 0], [-1, 2, -1, 0], [0, -2, 2, -1], [0, 0, -1, 2]]
        return c, [2, 2, 1, 1]
    raise RootSystemError(f"unknown family {fam!r}")


def _positive_roots(cartan: list[list[int]], rank: int) -> list[Vector]:
    """All positive roots of a reduced system, by reflection closure from
    the simple roots.  Returned sorted for determinism."""
    simples = [tuple(int(i == j) for j in range(rank)) for i in range(rank)]
    seen = set(simples)
    frontier = list(simples)
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(rank):
                pairing = sum(v[j] * cartan[i][j] for j in range(rank))
                w = tuple(v[j] - (pairing if j == i else 0) for j in range(rank))
                if _is_nonneg(w) and w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return sorted(seen)


def _parse_component(token: str) -> tuple[str, int]:
    m = _SIMPLE_TOKEN.match(token)
    if not m:
        raise RootSystemError(f"cannot parse root-system token {token!r}")
    fam, digits = m.group(1), m.group(2)
    if fam in ("G2", "F4"):
        implied = 2 if fam == "G2" else 4
        if digits and int(digits) != implied:
            raise RootSystemError(f"{fam} has rank {implied}, not {digits}")
        return fam, implied
    if not digits:
        raise RootSystemError(f"token {token!r} is missing a rank")
    return fam, int(digits)


@dataclass(frozen=True, eq=False)
class RootSystem:
    """A finite (possibly non-reduced, possibly reducible) restricted root
    system with per-simple-root raise dimensions n_alpha."""

    family: str
    rank: int
    cartan: Matrix
    lengths: tuple[int, ...]
    simple_roots: tuple[Vector, ...]
    positive_roots: tuple[Vector, ...]
    positive_lines: tuple[Vector, ...]
    raise_dims: tuple[int, ...]
    gram: Matrix
    line_raise: tuple[tuple[Vector, int], ...]

    @property
    def key(self) -> tuple:
        return (self.family, self.rank, self.raise_dims)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RootSystem) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    # -- pairings ---------------------------------------------------------

    def form(self, u: Vector, v: Vector) -> int:
        """Weyl-invariant inner product (u, v) in simple-root coordinates."""
        return sum(u[i] * self.gram[i][j] * v[j]
                   for i in range(self.rank) for j in range(self.rank))

    def pairing(self, v: Vector, root: Vector) -> Fraction:
        """Exact <v, root-vee> = 2 (v, root) / (root, root)."""
        return Fraction(2 * self.form(v, root), self.form(root, root))

    def cartan_pairing(self, beta: Vector, i: int) -> int:
        """<beta, alpha_i-vee> for the i-th simple root (0-based), an integer."""
        return sum(beta[j] * self.cartan[i][j] for j in range(self.rank))

    # -- membership -------------------------------------------------------

    def is_root(self, v: Vector) -> bool:
        """Whether v is a root (positive or negative) of this system.

        >>> rs = build_root_system("A1xA1")
        >>> rs.is_root((1, 1))
        False
        >>> build_root_system("B", 2).is_root((1, 1))
        True
        """
        v = tuple(v)
        if len(v) != self.rank:
            return False
        pos = set(self.positive_roots)
        return v in pos or tuple(-x for x in v) in pos

    # -- elements ---------------------------------------------------------

    def identity_element(self) -> "WeylElement":
        return WeylElement(self, mat_identity(self.rank), ())

    def simple_reflection(self, i: int) -> "WeylElement":
        """Reflection in the i-th simple root (0-based index)."""
        if not 0 <= i < self.rank:
            raise RootSystemError(f"simple root index {i} out of range")
        mat = tuple(
            tuple((1 if r == j else 0) - (self.cartan[i][j] if r == i else 0)
                  for j in range(self.rank))
            for r in range(self.rank)
        )
        return WeylElement(self, mat, (i,))

    def reflection_in_root(self, root: Vector) -> Matrix:
        """Matrix of the reflection fixing the hyperplane (., root) = 0."""
        den = self.form(root, root)
        cols = []
        for j in range(self.rank):
            e_j = tuple(int(k == j) for k in range(self.rank))
            coeff = Fraction(2 * self.form(e_j, root), den)
            col = [Fraction(int(k == j)) - coeff * root[k] for k in range(self.rank)]
            cols.append(col)
        rows = []
        for r in range(self.rank):
            row = []
            for j in range(self.rank):
                x = cols[j][r]
                if x.denominator != 1:
                    raise RootSystemError("reflection is not integral; not a root")
                row.append(int(x))
            rows.append(tuple(row))
        return tuple(rows)

    def raise_dim_of_line(self, line: Vector) -> int:
        for rep, n in self.line_raise:
            if rep == line:
                return n
        raise RootSystemError(f"{line} is not a positive root line")

    # -- text record ------------------------------------------------------

    def to_text(self) -> str:
        """Serialize as e.g. ``A 2 n=[1,1]``."""
        return f"{self.family} {self.rank} n=[{','.join(str(n) for n in self.raise_dims)}]"

    @staticmethod
    def from_text(text: str) -> "RootSystem":
        parts = text.split()
        if len(parts) not in (2, 3):
            raise RootSystemError(f"bad root-system record {text!r}")
        fam, rank = parts[0], int(parts[1])
        dims = None
        if len(parts) == 3:
            m = re.match(r"^n=\[([0-9,]*)\]$", parts[2])
            if not m:
                raise RootSystemError(f"bad raise-dim record {parts[2]!r}")
            dims = [int(x) for x in m.group(1).split(",") if x]
        return build_root_system(fam, rank, raise_dims=dims)


def build_root_system(family: str, rank: int | None = None,
                      raise_dims: list[int] | None = None) -> RootSystem:
    """Build a root system from a family name and rank.

    Accepts plain families ("A", 2), self-contained tokens ("A2", "G2",
    "BC2"), and products ("A1xA1", "A1xB2").

    >>> build_root_system("BC", 1).positive_roots
    ((1,), (2,))
    >>> len(build_root_system("G2").positive_roots)
    6
    """
    family = family.strip()
    if "x" in family:
        comps = [_parse_component(t) for t in family.split("x")]
        token = "x".join(f"{f}{r}" if f not in ("G2", "F4") else f
                         for f, r in comps)
    else:
        m = _SIMPLE_TOKEN.match(family)
        if not m:
            raise RootSystemError(f"unknown family {family!r}")
        fam, digits = m.group(1), m.group(2)
        if digits:
            r = int(digits)
            if rank is not None and rank != r:
                raise RootSystemError(
                    f"token {family!r} conflicts with explicit rank {rank}")
            comps = [_parse_component(family)]
        elif fam in ("G2", "F4"):
            implied = 2 if fam == "G2" else 4
            if rank is not None and rank != implied:
                raise RootSystemError(f"{fam} has rank {implied}")
            comps = [(fam, implied)]
        else:
            if rank is None:
                raise RootSystemError(f"family {fam!r} needs an explicit rank")
            comps = [(fam, rank)]
        token = comps[0][0]
    total = sum(r for _, r in comps)
    if rank is not None and rank != total:
        raise RootSystemError(f"rank {rank} does not match {token} (rank {total})")

    cartan = [[0] * total for _ in range(total)]
    lengths: list[int] = []
    positives: list[Vector] = []
    doubled: list[Vector] = []
    off = 0
    for fam, r in comps:
        c, d = _cartan_and_lengths(fam, r)
        for i in range(r):
            for j in range(r):
                cartan[off + i][off + j] = c[i][j]
        lengths.extend(d)
        pos = _positive_roots(c, r)
        def embed(v: Vector, off: int = off, r: int = r) -> Vector:
            return (0,) * off + v + (0,) * (total - off - r)
        positives.extend(embed(v) for v in pos)
        if fam == "BC":
            # doubled roots: twice every short root of the B-type base
            gram = [[d[i] * c[i][j] for j in range(r)] for i in range(r)]
            def sq(v: Vector) -> int:
                return sum(v[i] * gram[i][j] * v[j] for i in range(r) for j in range(r))
            shortest = min(sq(v) for v in pos)
            for v in pos:
                if sq(v) == shortest:
                    doubled.append(embed(tuple(2 * x for x in v)))
        off += r

    all_pos = sorted(positives + doubled)
    pos_set = set(positives + doubled)
    lines = tuple(v for v in all_pos
                  if not (all(x % 2 == 0 for x in v)
                          and tuple(x // 2 for x in v) in pos_set))

    if raise_dims is None:
        dims = tuple([1] * total)
    else:
        dims = tuple(int(n) for n in raise_dims)
        if len(dims) != total:
            raise RootSystemError(
                f"raise_dims has {len(dims)} entries for rank {total}")
        if any(n < 1 for n in dims):
            raise RootSystemError("raise dims must be >= 1")

    cartan_t = tuple(tuple(row) for row in cartan)
    gram = tuple(tuple(lengths[i] * cartan[i][j] for j in range(total))
                 for i in range(total))

    rs = RootSystem(
        family=token,
        rank=total,
        cartan=cartan_t,
        lengths=tuple(lengths),
        simple_roots=tuple(tuple(int(i == j) for j in range(total))
                           for i in range(total)),
        positive_roots=tuple(all_pos),
        positive_lines=lines,
        raise_dims=dims,
        gram=gram,
        line_raise=(),
    )
    object.__setattr__(rs, "line_raise", _assign_line_raises(rs))
    return rs


def _assign_line_raises(rs: RootSystem) -> tuple[tuple[Vector, int], ...]:
    """Extend raise dims from simple roots to all positive lines by Weyl
    invariance; reject data that differ within one Weyl orbit of lines."""
    mats = [rs.simple_reflection(i).matrix for i in range(rs.rank)]
    line_set = set(rs.positive_lines)

    def to_line(v: Vector) -> Vector:
        if not _is_nonneg(v):
            v = tuple(-x for x in v)
        if v not in line_set and all(x % 2 == 0 for x in v):
            v = tuple(x // 2 for x in v)
        return v

    classes: dict[Vector, set[Vector]] = {}
    assigned: dict[Vector, Vector] = {}
    for line in rs.positive_lines:
        if line in assigned:
            continue
        orbit = {line}
        frontier = [line]
        while frontier:
            nxt = []
            for v in frontier:
                for m in mats:
                    w = to_line(mat_apply(m, v))
                    if w not in orbit:
                        orbit.add(w)
                        nxt.append(w)
            frontier = nxt
        classes[line] = orbit
        for v in orbit:
            assigned[v] = line

    out: dict[Vector, int] = {}
    for rep, orbit in classes.items():
        ns = {rs.raise_dims[i] for i, sr in enumerate(rs.simple_roots)
              if sr in orbit}
        if not ns:
            raise RootSystemError("root line orbit without a simple root")
        if len(ns) > 1:
            raise RootSystemError(
                "raise dims must agree on Weyl-conjugate simple roots; "
                f"conflict {sorted(ns)} in the orbit of {rep}")
        n = ns.pop()
        for v in orbit:
            out[v] = n
    return tuple(sorted(out.items()))


@dataclass(frozen=True, eq=False)
class WeylElement:
    """A Weyl group element: an exact integer matrix plus a witnessing word
    in simple reflections.  Equality and hashing use the matrix only."""

    system: RootSystem
    matrix: Matrix
    word: tuple[int, ...]

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, WeylElement)
                and self.system == other.system
                and self.matrix == other.matrix)

    def __hash__(self) -> int:
        return hash((self.system.key, self.matrix))

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        if self.system != other.system:
            raise RootSystemError("cannot multiply elements of different systems")
        return WeylElement(self.system, mat_mul(self.matrix, other.matrix),
                           self.word + other.word)

    def inverse(self) -> "WeylElement":
        return WeylElement(self.system, mat_inverse(self.matrix),
                           tuple(reversed(self.word)))

    def is_identity(self) -> bool:
        return self.matrix == mat_identity(self.system.rank)

    def apply(self, v: Vector) -> Vector:
        return mat_apply(self.matrix, v)

    def length(self) -> int:
        """Number of positive root lines sent to negative roots.

        >>> rs = build_root_system("A", 2)
        >>> (rs.simple_reflection(0) * rs.simple_reflection(1)).length()
        2
        """
        count = 0
        for line in self.system.positive_lines:
            img = mat_apply(self.matrix, line)
            if all(x <= 0 for x in img):
                count += 1
        return count

    def __repr__(self) -> str:
        w = ".".join(str(i + 1) for i in self.word) or "e"
        return f"WeylElement({self.system.family}, {w})"


def braid_order(rs: RootSystem, i: int, j: int) -> int:
    """Order m(alpha_i, alpha_j) of s_i s_j; 2, 3, 4 or 6 in finite type.

    >>> braid_order(build_root_system("G2"), 0, 1)
    6
    """
    if i == j:
        raise RootSystemError("braid order needs two distinct simple roots")
    m = mat_mul(rs.simple_reflection(i).matrix, rs.simple_reflection(j).matrix)
    acc = m
    for k in range(1, 1000):
        if acc == mat_identity(rs.rank):
            return k
        acc = mat_mul(acc, m)
    raise RootSystemError("braid order did not terminate; system is not finite")


_ENUM_CACHE: dict[tuple, list[WeylElement]] = {}


def enumerate_group(rs: RootSystem, cap: int = DEFAULT_GROUP_CAP) -> list[WeylElement]:
    """All elements of the Weyl group, BFS order from the identity.

    Each element carries a canonical reduced word (shortlex from the BFS),
    so ids and output derived from this list are deterministic.
    """
    cached = _ENUM_CACHE.get(rs.key)
    if cached is not None and len(cached) <= cap:
        return list(cached)
    gens = [rs.simple_reflection(i) for i in range(rs.rank)]
    e = rs.identity_element()
    seen: dict[Matrix, WeylElement] = {e.matrix: e}
    order: list[WeylElement] = [e]
    frontier = [e]
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                m = mat_mul(w.matrix, g.matrix)
                if m not in seen:
                    if len(seen) + 1 > cap:
                        raise CapExceeded(
                            f"Weyl group exceeds cap {cap}; raise the cap")
                    nw = WeylElement(rs, m, w.word + g.word)
                    seen[m] = nw
                    order.append(nw)
                    nxt.append(nw)
        frontier = nxt
    _ENUM_CACHE[rs.key] = list(order)
    return order


def subgroup_closure(gens: list[WeylElement],
                     cap: int = DEFAULT_GROUP_CAP) -> set[WeylElement]:
    """Smallest subgroup containing gens, by breadth-first closure."""
    if not gens:
        raise RootSystemError("subgroup_closure needs at least one element")
    rs = gens[0].system
    if any(g.system != rs for g in gens):
        raise RootSystemError("generators come from different root systems")
    e = rs.identity_element()
    elements: dict[Matrix, WeylElement] = {e.matrix: e}
    for g in gens:
        elements.setdefault(g.matrix, g)
    frontier = list(elements.values())
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                m = mat_mul(g.matrix, w.matrix)
                if m not in elements:
                    if len(elements) + 1 > cap:
                        raise CapExceeded(f"subgroup closure exceeds cap {cap}")
                    nw = WeylElement(rs, m, g.word + w.word)
                    elements[m] = nw
                    nxt.append(nw)
        frontier = nxt
    return set(elements.values())


def reflections(rs: RootSystem) -> list[WeylElement]:
    """All reflections of the Weyl group, one per positive root line,
    sorted by line for determinism.  Words are canonical reduced words."""
    by_matrix = {w.matrix: w for w in enumerate_group(rs)}
    out = []
    for line in rs.positive_lines:
        m = rs.reflection_in_root(line)
        w = by_matrix.get(m)
        if w is None:
            raise RootSystemError(f"reflection in {line} is not in the group")
        out.append(w)
    return out


def canonical_word(w: WeylElement) -> tuple[int, ...]:
    """Canonical reduced word for w from the group enumeration."""
    for v in enumerate_group(w.system):
        if v.matrix == w.matrix:
            return v.word
    raise RootSystemError("element does not belong to its Weyl group")


def word_name(word: tuple[int, ...]) -> str:
    """Readable 1-based dotted name for a word; the identity is "e"."""
    return ".".join(str(i + 1) for i in word) if word else "e"
