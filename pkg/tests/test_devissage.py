import random

import pytest

from linkwitt.rational import QMatrix
from linkwitt.seifert import (SeifertError, SeifertForm, SeifertModule,
                              find_isomorphism, validate_form)
from linkwitt.devissage import (composition_series, find_simple_submodule,
                                is_simple, isotypic_group, witt_reduce)
from linkwitt.wittinv import analyze_form

from support import (random_form, worked_example_form,
                     worked_example_module, worked_example_simple,
                     worked_example_simple_form)


S_PRIME = QMatrix(4, 4, [[1, -1, -1, 0], [1, 0, 0, -1],
                         [1, 0, 1, -1], [0, 1, 1, 0]])
PHI_PRIME = QMatrix(4, 4, [[0, -1, 0, 0], [1, 0, 0, 0],
                           [0, 0, 0, -1], [0, 0, 1, 0]])


def test_find_simple_in_worked_example():
    V = worked_example_module().promote()
    simple, incl, cert = find_simple_submodule(V)
    assert 0 < simple.dim < 6
    ok, _ = is_simple(simple)
    assert ok


def test_simple_of_simple_is_itself():
    Vp = worked_example_simple()
    simple, incl, cert = find_simple_submodule(Vp)
    assert simple.dim == 4
    assert incl.matrix.rank() == 4


def test_dimension_one_is_simple():
    V = SeifertModule.from_blocks(1, QMatrix(1, 1, [["1/2"]]), [1])
    ok, cert = is_simple(V)
    assert ok and cert.kind == "dimension-1"


def test_worked_example_six_dim_not_simple():
    V = worked_example_module().promote()
    ok, witness = is_simple(V)
    assert not ok
    assert 0 < witness.matrix.cols < 6
    assert witness.intertwines()


def test_sum_of_lines_not_simple():
    a = SeifertModule.from_blocks(1, QMatrix(1, 1, [[0]]), [1])
    b = SeifertModule.from_blocks(1, QMatrix(1, 1, [[1]]), [1])
    ok, witness = is_simple(a.direct_sum(b))
    assert not ok


def test_isotypic_sum_not_simple():
    Vp = worked_example_simple()
    ok, witness = is_simple(Vp.direct_sum(Vp))
    assert not ok
    assert witness.matrix.cols in (4,)


def test_zero_module_rejected():
    with pytest.raises(SeifertError):
        is_simple(SeifertModule.zero(2))


def test_composition_series_line():
    V = SeifertModule.from_blocks(1, QMatrix(1, 1, [[0]]), [1])
    steps = composition_series(V)
    assert len(steps) == 1


def test_composition_series_worked_example():
    V = worked_example_module().promote()
    steps = composition_series(V)
    dims = []
    prev = 0
    for incl, simple in steps:
        dims.append(incl.matrix.cols - prev)
        prev = incl.matrix.cols
        ok, _ = is_simple(simple)
        assert ok
    assert sum(dims) == 6
    assert 4 in dims


def test_composition_series_extension():
    V = SeifertModule.from_blocks(1, QMatrix(2, 2, [[0, 1], [0, 1]]), [2])
    steps = composition_series(V)
    assert len(steps) == 2
    first_incl, first_simple = steps[0]
    assert first_simple.dim == 1
    # the submodule layer is the s=0 line, the quotient the s=1 line
    values = sorted([steps[0][1].s.data[0][0], steps[1][1].s.data[0][0]])
    assert values == [0, 1]


def test_witt_reduce_worked_example_printed_piece():
    dec = witt_reduce(worked_example_form())
    assert len(dec.groups) == 1
    group = dec.groups[0]
    assert len(group.forms) == 1
    assert group.module.s == S_PRIME
    assert group.forms[0].phi == PHI_PRIME


def test_witt_reduce_metabolic_empty():
    rng = random.Random(31)
    for _ in range(20):
        f = random_form(rng, rng.choice([1, 2, 3]), rng.randint(1, 5),
                        rng.choice([1, -1]))
        dec = witt_reduce(f.direct_sum(f.negate()))
        assert dec.groups == []


def test_witt_reduce_hyperbolic_socle_lines():
    V = SeifertModule.from_blocks(1, QMatrix(2, 2, [[0, 0], [0, 1]]), [2])
    f = SeifertForm(V, 1, QMatrix(2, 2, [[0, 1], [1, 0]]))
    dec = witt_reduce(f)
    assert dec.groups == []


def test_witt_reduce_rejects_singular():
    V = SeifertModule.from_blocks(1, QMatrix(1, 1, [["1/2"]]), [1])
    bad = SeifertForm(V, 1, QMatrix(1, 1, [[0]]))
    with pytest.raises(SeifertError):
        witt_reduce(bad)


def test_pieces_are_simple_with_valid_forms():
    rng = random.Random(32)
    for _ in range(6):
        f = random_form(rng, rng.choice([1, 2]), rng.randint(1, 5),
                        rng.choice([1, -1]))
        dec = witt_reduce(f)
        for group in dec.groups:
            ok, _ = is_simple(group.module)
            assert ok
            for g in group.forms:
                assert validate_form(g) is None


def test_isotypic_grouping_single_and_double():
    f = worked_example_simple_form()
    M = f.module
    groups = isotypic_group([(M, f), (M, f)])
    assert len(groups) == 1
    assert len(groups[0].forms) == 2
    line0 = SeifertModule.from_blocks(2, QMatrix(1, 1, [["1/2"]]), [1, 0])
    g0 = SeifertForm(line0, 1, QMatrix(1, 1, [[1]]))
    line1 = SeifertModule.from_blocks(2, QMatrix(1, 1, [["1/2"]]), [0, 1])
    g1 = SeifertForm(line1, 1, QMatrix(1, 1, [[1]]))
    groups = isotypic_group([(line0, g0), (line1, g1)])
    assert len(groups) == 2


def test_grouping_transports_onto_representative():
    f = worked_example_simple_form()
    M = f.module
    dec = witt_reduce(f.direct_sum(f))
    assert len(dec.groups) == 1
    group = dec.groups[0]
    assert len(group.forms) == 2
    for g in group.forms:
        assert g.module == group.module
        assert validate_form(g) is None
    assert find_isomorphism(group.module, M) is not None


def test_seed_does_not_change_invariants():
    rng = random.Random(33)
    for _ in range(5):
        f = random_form(rng, rng.choice([1, 2]), rng.randint(1, 4),
                        rng.choice([1, -1]))
        r0 = analyze_form(f, seed=0)
        r1 = analyze_form(f, seed=1)
        assert r0.verdict == r1.verdict
        assert [(p.module_dim, p.multiplicity, p.signatures, p.discriminant,
                 p.hasse, p.status) for p in r0.pieces] \
            == [(p.module_dim, p.multiplicity, p.signatures, p.discriminant,
                 p.hasse, p.status) for p in r1.pieces]


def test_reduction_step_preserves_report():
    # peeling an isotropic simple off a metabolic sum leaves the report of
    # the full pipeline unchanged
    from linkwitt.devissage import _isotropic_candidate, find_simple_submodule
    from linkwitt.seifert import induced_form_on_subquotient, \
        submodule_from_basis
    rng = random.Random(34)
    checked = 0
    for _ in range(10):
        f = random_form(rng, rng.choice([1, 2]), rng.randint(1, 4),
                        rng.choice([1, -1]))
        g = f.direct_sum(f.negate())
        incl = _isotropic_candidate(g)
        if incl is None:
            continue
        inner, inner_incl, _ = find_simple_submodule(incl.source)
        sub, sub_incl = submodule_from_basis(
            g.module, incl.matrix * inner_incl.matrix)
        reduced, _ = induced_form_on_subquotient(g, sub_incl)
        before = analyze_form(g)
        if reduced.module.dim:
            after = analyze_form(reduced)
            assert before.verdict == after.verdict
        else:
            assert before.verdict == "witt-trivial"
        checked += 1
    assert checked >= 5


def _quaternionic_module():
    import os
    import json
    from linkwitt.cli import load_input
    path = os.path.join(os.path.dirname(__file__), "data",
                        "quaternionic.json")
    module, form = load_input(path)
    return module, form


def test_quaternionic_simple_certified_by_norm_form():
    V, _ = _quaternionic_module()
    ok, cert = is_simple(V)
    assert ok
    assert cert.kind == "quaternion-division"
    assert (cert.detail["a"], cert.detail["b"]) == (-1, -1)


def test_quaternionic_piece_refused_honestly():
    _, f = _quaternionic_module()
    rep = analyze_form(f)
    assert rep.verdict == "undetermined (quaternionic)"
    assert len(rep.pieces) == 1
    piece = rep.pieces[0]
    assert piece.status.startswith("unsupported")
    assert "quaternion" in piece.algebra_kind
    assert piece.signatures is None and piece.hasse is None
