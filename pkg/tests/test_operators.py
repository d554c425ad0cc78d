import numpy as np
import pytest

from sjgeo import geometry as geo
from sjgeo import operators as op
from sjgeo.metrics import MetricParams

UNIT = MetricParams(1.0, 1.0)


def test_wirtinger_of_real_part():
    p = geo.DiskPoint([[0.1 + 0.2j]], [[0.3 - 0.1j]])
    f = op.ScalarField("rew", "disk", lambda q: float(q.w[0, 0].real))
    b = op.wirtinger_bundle(f, p)
    assert b.d_mat[0, 0] == pytest.approx(0.5, abs=1e-9)
    assert b.d_mat_conj[0, 0] == pytest.approx(0.5, abs=1e-9)


def test_wirtinger_of_trace_y():
    p = geo.random_point("upper", 1, 1, 3)
    f = op.named_field("upper", 1, 1, "sigmaY")
    b = op.wirtinger_bundle(f, p)
    assert b.d_mat[0, 0] == pytest.approx(-0.5j, abs=1e-9)


def test_wirtinger_richardson_consistency():
    # step-halving agrees with the plain bundle on polynomial fields
    p = geo.random_point("disk", 2, 1, 5)
    f = op.ScalarField("poly", "disk",
                       lambda q: float((q.w[0, 1] * q.w[1, 0].conjugate()).real
                                       + q.eta[0, 0].imag ** 2))
    b1 = op.wirtinger_bundle(f, p, h=1e-4)
    b2 = op.wirtinger_bundle(f, p, h=5e-5)
    rich = (4 * b2.d_mat - b1.d_mat) / 3
    assert np.max(np.abs(rich - b2.d_mat)) < 1e-8


def test_wirtinger_conjugate_pairs_real_field():
    p = geo.random_point("disk", 2, 2, 1)
    f = op.test_field_suite("disk", 2, 2, 3)[3]
    b = op.wirtinger_bundle(f, p)
    assert np.max(np.abs(b.d_mat_conj - b.d_mat.conj())) < 1e-8
    assert np.max(np.abs(b.d_vec_conj - b.d_vec.conj())) < 1e-8


def test_domain_margin_guard():
    near = geo.DiskPoint([[0.999999]], [[0.0]])
    f = op.named_field("disk", 1, 1, "absW2")
    with pytest.raises(op.DomainMargin):
        op.lap_disk(f, near, UNIT)


def test_lap_siegel_examples():
    p = geo.random_point("upper", 1, 1, 3)
    assert op.lap_siegel(op.named_field("upper", 1, 1, "sigmaY"), p) == \
        pytest.approx(0.0, abs=1e-7)
    assert op.lap_siegel(op.named_field("upper", 1, 1, "logDetY"), p) == \
        pytest.approx(-1.0, rel=1e-6)
    p2 = geo.random_point("upper", 2, 1, 11)
    assert op.lap_siegel(op.named_field("upper", 2, 1, "logDetY"), p2) == \
        pytest.approx(-3.0, rel=1e-6)


def test_lap_disk_n_example():
    p = geo.random_point("disk", 1, 1, 5)
    f = op.named_field("disk", 1, 1, "absW2")
    expect = (1 - abs(p.w[0, 0]) ** 2) ** 2
    assert op.lap_disk_n(f, p) == pytest.approx(expect, rel=1e-7)


def test_lap_disk_closed_values():
    f_w = op.named_field("disk", 1, 1, "absW2")
    p = geo.DiskPoint([[0.0]], [[0.4 + 0.2j]])
    assert op.lap_disk(f_w, p, UNIT) == pytest.approx(1.0, rel=1e-7)
    f_e = op.named_field("disk", 1, 1, "absEta2")
    origin = geo.DiskPoint([[0.0]], [[0.0]])
    assert op.lap_disk(f_e, origin, UNIT) == pytest.approx(1.0, rel=1e-7)


def test_constants_annihilated():
    for model, maker in (("upper", op.lap_upper), ("disk", op.lap_disk)):
        p = geo.random_point(model, 2, 1, 9)
        f = op.test_field_suite(model, 2, 1, 0)[0]
        assert abs(maker(f, p, UNIT)) < 1e-8


def test_quarter_laplacian_split():
    p = geo.random_point("upper", 2, 2, 21)
    f = op.test_field_suite("upper", 2, 2, 77)[3]
    lhs = 0.25 * op.lap_upper(f, p, UNIT) - op.op_invariant("D", f, p)
    rhs = op.op_invariant("L", f, p)
    assert abs(lhs - rhs) < 1e-8 * (1 + abs(rhs))
    pd = geo.random_point("disk", 2, 2, 22)
    fd = op.test_field_suite("disk", 2, 2, 78)[3]
    lhs_d = op.lap_disk(fd, pd, UNIT) - op.op_invariant("Dtilde", fd, pd)
    rhs_d = op.op_invariant("Ltilde", fd, pd)
    assert abs(lhs_d - rhs_d) < 1e-8 * (1 + abs(rhs_d))


def test_d_ignores_mat_only_fields():
    p = geo.random_point("upper", 2, 2, 2)
    f = op.ScalarField("ymat", "upper", lambda q: float(np.sum(q.y * q.y)))
    assert abs(op.op_invariant("D", f, p)) < 1e-10


def test_printed_forms_agree_at_n1():
    # with a 1 x 1 symmetric block the symmetrization is trivial
    for m in (1, 2):
        p = geo.random_point("disk", 1, m, 4)
        f = op.test_field_suite("disk", 1, m, 5)[3]
        sb = op.second_bundle(f, p)
        a = op.lap_disk(None, p, UNIT, _sb=sb)
        b = op.lap_disk_printed(None, p, UNIT, _sb=sb)
        assert abs(a - b) <= 1e-12 * (1 + abs(a))


def test_printed_forms_deviate_at_n2():
    # the expanded displays drop the shift symmetrization; visible for n >= 2
    found = 0.0
    for seed in range(5):
        p = geo.random_point("disk", 2, 1, seed)
        f = op.test_field_suite("disk", 2, 1, 7)[3]
        sb = op.second_bundle(f, p)
        a = op.lap_disk(None, p, UNIT, _sb=sb)
        b = op.lap_disk_printed(None, p, UNIT, _sb=sb)
        found = max(found, abs(a - b) / (1 + max(abs(a), abs(b))))
    assert found > 1e-8


def test_cayley_transfer_of_laplacians():
    # the disk Laplacian is the model transfer of the upper one
    from sjgeo.metrics import Chart
    n, m = 2, 1
    p = geo.random_point("disk", n, m, 13)
    up = geo.cayley(p)
    chu = Chart("upper", n, m)
    rng = np.random.default_rng(3)
    center = chu.point_to_vec(up) + rng.uniform(-0.4, 0.4, chu.dim)
    f = op.ScalarField("bump", "upper",
                       lambda q: float(np.exp(-np.sum((chu.point_to_vec(q) - center) ** 2))))
    comp = op.ScalarField("bump-pullback", "disk", lambda q: f(geo.cayley(q)))
    a = op.lap_disk(comp, p, UNIT)
    b = op.lap_upper(f, up, UNIT)
    assert abs(a - b) <= 1e-6 * (1 + max(abs(a), abs(b)))


def test_lap_disk_vs_closed_11():
    for seed in range(20):
        p = geo.random_point("disk", 1, 1, 400 + seed)
        for f in op.test_field_suite("disk", 1, 1, seed)[1:]:
            a = op.lap_disk(f, p, UNIT)
            b = op.lap_disk_closed_11(f, p)
            assert abs(a - b) <= 1e-6 * (1 + max(abs(a), abs(b)))


def test_field_suite_properties():
    suite = op.test_field_suite("disk", 2, 2, 42)
    names = [f.name for f in suite]
    assert names == ["const", "linear", "trace-quad", "gauss", "cross"]
    again = op.test_field_suite("disk", 2, 2, 42)
    p = geo.random_point("disk", 2, 2, 0)
    for f, g in zip(suite, again):
        assert f(p) == g(p)
        assert np.isfinite(f(p))
    assert suite[0](p) == 1.0
    with pytest.raises(KeyError):
        op.named_field("disk", 1, 1, "no-such-field")
    assert "absW2" in op.field_registry_ids("disk")
