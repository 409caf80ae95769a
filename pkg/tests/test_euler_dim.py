import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arithcx.bej import NoKnownFamily, SignatureMismatch
from arithcx.cfrac import PeriodicCF, expand
from arithcx.euler_dim import (
    EulerFamily,
    NoStableSignature,
    complexity,
    complexity_report,
    estimate_dimension,
    fit_entry_polynomials,
    format_entry_polys,
    predicted_rank,
    sample_family,
    sweep_family,
)
from arithcx.qi import normalize_surd, parse_surd
from strategies import surds


def cm(b):
    return normalize_surd(0, 1, 1, b * b + 2)


def q_family(b):
    return normalize_surd(b, 1, 2, b * b - 4)


def poly_value(coeffs, x):
    return sum(c * x**i for i, c in enumerate(coeffs))


UV_SWEEP = [(u * v, 2 * u, 2 * u * v) for u in range(1, 6) for v in range(1, 6)]
U_SWEEP = [(u - 1, 1, u - 2) for u in range(3, 11)]


class TestSampleFamily:
    def test_cm_window(self):
        fam = sample_family(parse_surd("sqrt(11)"))
        assert fam.signature == (1, 2)
        assert {3, 6, 11, 18, 27} <= set(fam.coordinates)
        assert all(cf.signature == (1, 2) for _, cf in fam.samples)

    def test_fixed_constants(self):
        fam = sample_family(parse_surd("(3+sqrt(5))/2"), window=80, signature=(1, 2))
        assert {5, 21, 45, 77} <= set(fam.coordinates)
        assert fam.constants == (3, 1, 2)
        for x, cf in fam.samples:
            assert cf.signature == (1, 2)
            assert expand(normalize_surd(3, 1, 2, x)).canonical() == cf.canonical()

    def test_minimal_signature_default(self):
        with pytest.raises(NoStableSignature):
            sample_family(parse_surd("(3+sqrt(5))/2"))

    def test_small_window(self):
        with pytest.raises(ValueError):
            sample_family(parse_surd("sqrt(2)"), window=2)

    def test_squarefree(self):
        fam = sample_family(parse_surd("sqrt(11)"), squarefree=True)
        assert 18 not in fam.coordinates and 27 not in fam.coordinates and 11 in fam.coordinates

    def test_sweep(self):
        fam = sweep_family(cm, range(1, 9))
        assert fam.coordinates == list(range(1, 9))
        assert fam.points[2] == (3, 3, 6)
        with pytest.raises(NoStableSignature):
            sweep_family(lambda b: normalize_surd(0, 1, 1, b), [2, 3, 7])


class TestFit:
    def test_cm_family(self):
        polys = fit_entry_polynomials(sweep_family(cm, range(1, 9)))
        assert polys == [[0, 1], [0, 1], [0, 2]]
        assert format_entry_polys(polys, "b") == ["b", "b", "2*b"]

    def test_q_family(self):
        polys = fit_entry_polynomials(sweep_family(q_family, range(3, 21, 2), (1, 2)))
        assert format_entry_polys(polys, "b") == ["b - 1", "1", "b - 2"]

    def test_noise_rejected(self):
        rng = random.Random(5)
        samples = tuple(
            (x, PeriodicCF((rng.randint(1, 99),), (rng.randint(1, 99), rng.randint(1, 99)))) for x in range(1, 9)
        )
        assert fit_entry_polynomials(EulerFamily(cm(1), (1, 2), samples)) is None

    def test_insufficient(self):
        with pytest.raises(ValueError):
            fit_entry_polynomials(sweep_family(cm, range(1, 4)), max_deg=2)

    @settings(max_examples=30)
    @given(st.integers(1, 40), st.integers(5, 12))
    def test_round_trip(self, start, count):
        fam = sweep_family(cm, range(start, start + count))
        polys = fit_entry_polynomials(fam)
        for x, cf in fam.samples:
            assert tuple(poly_value(p, x) for p in polys) == cf.entries


class TestEstimateDimension:
    def test_examples(self):
        assert estimate_dimension([(b, b, 2 * b) for b in range(1, 9)]).dim == 1
        assert estimate_dimension(UV_SWEEP).dim == 2
        assert estimate_dimension(U_SWEEP).dim == 1
        assert estimate_dimension([(1, 2, 3)] * 8).dim == 0

    def test_free_points(self):
        pts = list(itertools.product(range(1, 5), repeat=3))
        assert estimate_dimension(pts).dim == 3

    def test_rejects(self):
        with pytest.raises(ValueError):
            estimate_dimension([(1, 2), (3, 4)])
        with pytest.raises(ValueError):
            estimate_dimension([(1, 2), (3, 4), (5,)])

    @given(st.permutations(UV_SWEEP), st.lists(st.sampled_from(UV_SWEEP), max_size=10))
    def test_invariance(self, perm, extra):
        base = estimate_dimension(UV_SWEEP)
        got = estimate_dimension(list(perm) + extra)
        assert (got.dim, got.relation_count, got.sample_count) == (base.dim, base.relation_count, base.sample_count)

    def test_bounded_by_arity(self):
        rng = random.Random(2)
        for _ in range(20):
            n = rng.randint(1, 4)
            pts = [tuple(rng.randint(-5, 5) for _ in range(n)) for _ in range(rng.randint(3, 30))]
            assert 0 <= estimate_dimension(pts).dim <= n

    def test_json(self):
        data = estimate_dimension(UV_SWEEP).to_json()
        assert data["method"] == "implicitization" and data["dim"] == 2


class TestComplexity:
    @pytest.mark.parametrize(
        "theta, c, r", [("sqrt(11)", 2, 1), ("(5+sqrt(21))/2", 1, 0), ("2+sqrt(3)", 2, 1)]
    )
    def test_examples(self, theta, c, r):
        t = parse_surd(theta)
        assert complexity(t) == c and predicted_rank(t) == r
        assert complexity_report(t)["method"] == "family-match"

    @pytest.mark.parametrize("b", range(1, 51))
    def test_cm_sweep(self, b):
        assert complexity(cm(b)) == 2

    @pytest.mark.parametrize("b", range(3, 102, 2))
    def test_q_sweep(self, b):
        assert complexity(q_family(b)) == 1

    def test_report_fields(self):
        r = complexity_report(parse_surd("sqrt(11)"))
        for key in ("theta", "signature", "method", "dimension", "complexity", "predicted_rank", "family_parameters", "samples_used"):
            assert key in r
        assert r["signature"] == [1, 2]

    def test_implicitization_route(self):
        r = complexity_report(parse_surd("sqrt(7)"))
        assert r["method"] == "implicitization"
        assert r["samples_used"] >= 3 and r["complexity"] >= 1

    def test_no_known_family(self):
        with pytest.raises(NoKnownFamily):
            complexity(parse_surd("(1+sqrt(5))/2"))

    @settings(max_examples=40)
    @given(surds(a=20, b=3, c=5, d=60))
    def test_at_least_one(self, theta):
        try:
            c = complexity(theta)
        except (NoKnownFamily, NoStableSignature, SignatureMismatch):
            return
        assert c >= 1 and predicted_rank(theta) == c - 1
