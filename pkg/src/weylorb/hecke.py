"""Mod-2 Hecke module attached to an orbit datum.

The free F2-vector space on the orbits carries one operator T_alpha per
simple root, assembled cell by cell.  Vectors are packed as Python ints,
bit i standing for basis orbit i; applying an operator XORs columns.
Every T_alpha is an involution, and on a clean datum the operators
satisfy the same braid relations as the sigma involutions, with the
leading term of each column recovering sigma itself.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coxeter import WeylElement, braid_order, enumerate_group
from .datum import OrbitDatum


class HeckeError(RuntimeError):
    """The module data is internally inconsistent."""


@dataclass(frozen=True)
class HeckeBraidViolation:
    alpha: int
    beta: int
    order: int
    witness: str

    def line(self) -> str:
        return (f"VIOLATION hecke-braid at alpha {self.alpha}, beta {self.beta}: "
                f"(T_{self.alpha} T_{self.beta})^{self.order} moves basis vector "
                f"[{self.witness}]")


@dataclass(frozen=True)
class HeckeModule:
    datum: OrbitDatum
    basis: tuple[str, ...]
    columns: dict[int, tuple[int, ...]]

    def index(self, orbit_id: str) -> int:
        return self.basis.index(orbit_id)

    def unit(self, orbit_id: str) -> int:
        return 1 << self.index(orbit_id)

    def terms(self, vec: int) -> list[str]:
        """Basis orbits with a set bit, in basis order."""
        return [oid for i, oid in enumerate(self.basis) if vec >> i & 1]


def build_module(d: OrbitDatum) -> HeckeModule:
    """Assemble the T_alpha operators from the raise cells.

    U cells swap their two basis vectors.  TU and RT cells fix [y] and
    send [z1] to [y] + [z2] and back.  A, RI and N cells act as the
    identity on their members.
    """
    basis = d.orbit_ids()
    idx = {oid: i for i, oid in enumerate(basis)}
    columns: dict[int, tuple[int, ...]] = {}
    for alpha, cells in sorted(d.cells.items()):
        col = [1 << i for i in range(len(basis))]
        for cell in cells:
            if cell.kind == "U":
                col[idx[cell.y]] = 1 << idx[cell.z]
                col[idx[cell.z]] = 1 << idx[cell.y]
            elif cell.kind in ("TU", "RT"):
                col[idx[cell.z1]] = (1 << idx[cell.y]) | (1 << idx[cell.z2])
                col[idx[cell.z2]] = (1 << idx[cell.y]) | (1 << idx[cell.z1])
        columns[alpha] = tuple(col)
    return HeckeModule(datum=d, basis=basis, columns=columns)


def apply(module: HeckeModule, alpha: int, vec: int) -> int:
    """T_alpha applied to a packed vector."""
    col = module.columns[alpha]
    out = 0
    i = 0
    while vec:
        if vec & 1:
            out ^= col[i]
        vec >>= 1
        i += 1
    return out


def apply_word(module: HeckeModule, word: tuple[int, ...], vec: int) -> int:
    """T_w for w given as a word, rightmost letter acting first."""
    for alpha in reversed(word):
        vec = apply(module, alpha, vec)
    return vec


def leading_term(module: HeckeModule, alpha: int, orbit_id: str) -> str:
    """The unique minimum-dimension orbit in T_alpha [orbit_id].

    A tie in the minimum dimension means the datum the module was built
    from is corrupt, so that raises instead of picking arbitrarily.
    """
    d = module.datum
    terms = module.terms(apply(module, alpha, module.unit(orbit_id)))
    if not terms:
        raise HeckeError(f"T_{alpha} [{orbit_id}] is zero")
    dims = [d.orbit(t).dim for t in terms]
    low = min(dims)
    lead = [t for t, dim in zip(terms, dims) if dim == low]
    if len(lead) != 1:
        raise HeckeError(
            f"leading-term tie in T_{alpha} [{orbit_id}]: "
            + ", ".join(f"[{t}]" for t in lead))
    return lead[0]


def braid_check_module(module: HeckeModule) -> list[HeckeBraidViolation]:
    """Check (T_a T_b)^m = id on every basis vector, m the braid order."""
    rs = module.datum.root_system
    out = []
    for a in sorted(module.columns):
        for b in sorted(module.columns):
            if b <= a:
                continue
            m = braid_order(rs, a - 1, b - 1)
            witness = None
            for oid in module.basis:
                vec = module.unit(oid)
                for _ in range(m):
                    vec = apply(module, a, apply(module, b, vec))
                if vec != module.unit(oid):
                    witness = oid
                    break
            if witness is not None:
                out.append(HeckeBraidViolation(alpha=a, beta=b, order=m,
                                               witness=witness))
    return out


def _span_dimension(vectors: list[int]) -> int:
    """F2 rank of a list of packed vectors."""
    pivots: list[int] = []
    for v in vectors:
        for p in pivots:
            v = min(v, v ^ p)
        if v:
            pivots.append(v)
    return len(pivots)


@dataclass(frozen=True)
class RegularRepReport:
    ok: bool
    group_order: int
    distinct_images: int
    span_dimension: int
    braid_violations: tuple[HeckeBraidViolation, ...]

    def lines(self) -> list[str]:
        out = [v.line() for v in self.braid_violations]
        out.append(f"group order {self.group_order}, "
                   f"distinct images {self.distinct_images}, "
                   f"cyclic span dimension {self.span_dimension}: "
                   + ("regular" if self.ok else "NOT regular"))
        return out


def verify_regular_representation(d: OrbitDatum, cap: int | None = None,
                                  ) -> RegularRepReport:
    """Check that w -> T_w [e] realizes the regular representation.

    Requires a datum whose orbit ids are canonical reduced words (as the
    flag datum produces), so that the identity orbit "e" exists.  Passes
    when the module braid relations hold, the map w -> T_w [e] is
    injective over the whole group, and the cyclic submodule generated
    by [e] is everything.
    """
    module = build_module(d)
    violations = tuple(braid_check_module(module))
    kwargs = {} if cap is None else {"cap": cap}
    group = enumerate_group(d.root_system, **kwargs)
    if "e" not in module.basis:
        raise HeckeError("no identity orbit \"e\"; regular representation "
                         "check needs a flag-shaped datum")
    start = module.unit("e")
    images: dict[int, WeylElement] = {}
    vectors = []
    for w in group:
        vec = apply_word(module, tuple(a + 1 for a in w.word), start)
        vectors.append(vec)
        images.setdefault(vec, w)
    span = _span_dimension(vectors)
    ok = (not violations and len(images) == len(group)
          and span == len(module.basis) and len(group) == len(module.basis))
    return RegularRepReport(ok=ok, group_order=len(group),
                            distinct_images=len(images),
                            span_dimension=span,
                            braid_violations=violations)
