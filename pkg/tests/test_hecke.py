"""Mod-2 Hecke module: involutivity, braid relations, leading terms."""

from __future__ import annotations

import pytest

from weylorb.bundled import DATUM_NAMES, bundled_datum
from weylorb.coxeter import build_root_system, enumerate_group
from weylorb.datum import Orbit, OrbitDatum, RaiseCell, generate_flag_datum
from weylorb.hecke import (
    HeckeError,
    apply,
    apply_word,
    braid_check_module,
    build_module,
    leading_term,
    verify_regular_representation,
)

ALL_DATA = [bundled_datum(name) for name in DATUM_NAMES]
FLAG_TOKENS = ("A1", "A2", "A3", "B2", "BC2", "G2", "A1xA1")


def every_datum():
    out = list(ALL_DATA)
    out.extend(generate_flag_datum(build_root_system(t)) for t in FLAG_TOKENS)
    return out


@pytest.mark.parametrize("d", every_datum(), ids=lambda d: d.root_system.to_text())
def test_operators_are_involutions(d):
    m = build_module(d)
    for alpha in m.columns:
        for oid in m.basis:
            v = m.unit(oid)
            assert apply(m, alpha, apply(m, alpha, v)) == v


@pytest.mark.parametrize("d", every_datum(), ids=lambda d: d.root_system.to_text())
def test_module_braid_relations_hold(d):
    assert braid_check_module(build_module(d)) == []


@pytest.mark.parametrize("d", every_datum(), ids=lambda d: d.root_system.to_text())
def test_leading_term_is_sigma(d):
    m = build_module(d)
    for alpha in m.columns:
        for oid in m.basis:
            assert leading_term(m, alpha, oid) == d.sigma(alpha, oid)


def test_columns_have_at_most_three_terms():
    for d in every_datum():
        m = build_module(d)
        for alpha in m.columns:
            for col in m.columns[alpha]:
                assert 1 <= bin(col).count("1") <= 3


def test_tu_column_shape():
    d = bundled_datum("rank1_tu")
    m = build_module(d)
    assert m.terms(apply(m, 1, m.unit("y"))) == ["y"]
    assert sorted(m.terms(apply(m, 1, m.unit("z1")))) == ["y", "z2"]
    assert sorted(m.terms(apply(m, 1, m.unit("z2")))) == ["y", "z1"]


def test_u_column_swaps():
    d = bundled_datum("rank1_u")
    m = build_module(d)
    assert m.terms(apply(m, 1, m.unit("y"))) == ["z"]
    assert m.terms(apply(m, 1, m.unit("z"))) == ["y"]


def test_identity_kinds_give_identity_columns():
    for name in ("rank1_a", "rank1_ri", "rank1_n"):
        m = build_module(bundled_datum(name))
        for oid in m.basis:
            assert apply(m, 1, m.unit(oid)) == m.unit(oid)


def test_apply_word_composes_rightmost_first():
    d = bundled_datum("sl3_so12")
    m = build_module(d)
    v = m.unit("z")
    lhs = apply_word(m, (1, 2), v)
    rhs = apply(m, 1, apply(m, 2, v))
    assert lhs == rhs


def test_apply_is_linear():
    d = bundled_datum("sl3_so12")
    m = build_module(d)
    v = m.unit("x") ^ m.unit("z")
    assert apply(m, 1, v) == apply(m, 1, m.unit("x")) ^ apply(m, 1, m.unit("z"))


def test_leading_term_tie_raises():
    rs = build_root_system("A", 1)
    orbits = (Orbit("y", 2, 0, 1, 0, open=True),
              Orbit("z1", 1, 0, 0, 0),
              Orbit("z2", 1, 0, 0, 0))
    cells = {1: (RaiseCell(1, "TU", y="y", z1="z1", z2="z2"),)}
    d = OrbitDatum(rs, orbits, cells)
    m = build_module(d)
    # column of z1 is [y] + [z2] with dim y == 2 > dim z2: fine
    assert leading_term(m, 1, "z1") == "z2"
    # corrupt: pull y down to the z level so the two terms tie
    bad = OrbitDatum(rs, (Orbit("y", 1, 0, 1, 0, open=True),
                          Orbit("z1", 1, 0, 0, 0),
                          Orbit("z2", 1, 0, 0, 0)), cells)
    mbad = build_module(bad)
    with pytest.raises(HeckeError, match="leading-term tie"):
        leading_term(mbad, 1, "z1")


@pytest.mark.parametrize("token,order", [("A1", 2), ("A2", 6), ("A3", 24),
                                         ("B2", 8), ("BC2", 8), ("G2", 12),
                                         ("A1xA1", 4)])
def test_flag_regular_representation(token, order):
    d = generate_flag_datum(build_root_system(token))
    report = verify_regular_representation(d)
    assert report.ok
    assert report.group_order == order
    assert report.distinct_images == order
    assert report.span_dimension == order
    assert report.braid_violations == ()


def test_regular_rep_images_are_basis_vectors():
    rs = build_root_system("A", 2)
    d = generate_flag_datum(rs)
    m = build_module(d)
    seen = set()
    for w in enumerate_group(rs):
        vec = apply_word(m, tuple(a + 1 for a in w.word), m.unit("e"))
        assert bin(vec).count("1") == 1
        seen.add(vec)
    assert len(seen) == 6


def test_regular_rep_requires_identity_orbit():
    with pytest.raises(HeckeError, match="identity orbit"):
        verify_regular_representation(bundled_datum("sl3_so12"))


def test_non_regular_module_reported():
    # sl3 has 4 orbits but |W| = 6, so a span check on a relabeled datum
    # with an "e" orbit must come out not regular
    d = bundled_datum("sl3_so12")
    relabel = {"x": "e", "y1": "y1", "y2": "y2", "z": "z"}
    orbits = tuple(Orbit(relabel[o.id], o.dim, o.c, o.rk, o.s, open=o.open,
                         lattice=o.lattice) for o in d.orbits)

    def fix(cell):
        kw = {}
        for role in ("y", "z", "z1", "z2"):
            v = getattr(cell, role)
            if v is not None:
                kw[role] = relabel[v]
        return RaiseCell(cell.alpha, cell.kind, **kw)

    cells = {a: tuple(fix(c) for c in cs) for a, cs in d.cells.items()}
    d2 = OrbitDatum(d.root_system, orbits, cells)
    report = verify_regular_representation(d2)
    assert not report.ok
    assert report.group_order == 6
    assert report.span_dimension <= 4
    assert any("NOT regular" in line for line in report.lines())


def test_hecke_braid_violation_has_witness():
    rs = build_root_system("A1xA1")
    orbits = (Orbit("p", 3, 0, 0, 0, open=True),
              Orbit("q", 2, 0, 0, 0),
              Orbit("r", 1, 0, 0, 0))
    cells = {1: (RaiseCell(1, "U", y="p", z="q"), RaiseCell(1, "A", y="r")),
             2: (RaiseCell(2, "U", y="q", z="r"), RaiseCell(2, "A", y="p"))}
    m = build_module(OrbitDatum(rs, orbits, cells))
    violations = braid_check_module(m)
    assert len(violations) == 1
    assert (violations[0].alpha, violations[0].beta) == (1, 2)
    assert "hecke-braid" in violations[0].line()
