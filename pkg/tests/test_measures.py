import itertools
import math

import numpy as np
import pytest
from conftest import ref_measure
from hypothesis import given, settings
from hypothesis import strategies as st

from ncdiscord.measures import (
    MeasureResult,
    Method,
    NormKind,
    bell_diagonal_closed,
    d_n,
    d_n_prime,
    d_n_pure_closed,
    d_n_symmetric,
    isotropic_closed_paper,
    measure_values,
    pair_set,
    total_non_commutativity,
    werner_closed_paper,
)
from ncdiscord.numerics import random_unitary
from ncdiscord.states import (
    PAULI,
    BellCoefficients,
    SchmidtVector,
    bell_coefficients_of,
    bell_diagonal,
    classical_classical,
    isotropic,
    max_entangled,
    pure_from_schmidt,
    quantum_classical,
    random_bell_coefficients,
    random_density,
    random_density_batch,
    random_quantum_classical,
    rho_family,
    validate,
    werner,
)

SX, SY, SZ = PAULI
SQ2 = math.sqrt(2)


def brute_pairs(d):
    """Filter all index quadruples by the two sum conditions (1-based as printed)."""
    out = set()
    for i, j, k, l in itertools.product(range(1, d + 1), repeat=4):
        if (i <= k and j <= l and (i, j) != (k, l)) or (i < k and l < j):
            out.add(((i - 1, j - 1), (k - 1, l - 1)))
    return out


@pytest.mark.parametrize("d", [1, 2, 3, 4, 5])
def test_pair_set_matches_brute_force(d):
    ps = pair_set(d)
    assert set(ps) == brute_pairs(d)
    assert list(ps) == sorted(ps)
    # every unordered pair of distinct blocks exactly once
    canon = {tuple(sorted(p)) for p in ps}
    assert len(canon) == len(ps) == math.comb(d * d, 2)


def test_pair_set_small_cases():
    assert pair_set(1) == ()
    assert pair_set(2) == (
        ((0, 0), (0, 1)), ((0, 0), (1, 0)), ((0, 0), (1, 1)),
        ((0, 1), (1, 0)), ((0, 1), (1, 1)), ((1, 0), (1, 1)),
    )
    first = [p for p in pair_set(3) if p[0][1] <= p[1][1]]
    assert len(first) == 27 and len(pair_set(3)) - len(first) == 9


def test_total_non_commutativity_examples():
    assert total_non_commutativity([np.eye(2), SZ, np.diag([1.0, 2.0])]) == 0.0
    assert total_non_commutativity([SX, SY], NormKind.TRACE) == pytest.approx(4.0)
    assert total_non_commutativity([SX, SY, SZ], NormKind.HS) == pytest.approx(3 * 2 * SQ2)
    assert total_non_commutativity([SX]) == 0.0
    with pytest.raises(ValueError):
        total_non_commutativity([SX, np.eye(3)])


def test_d_n_equals_total_non_commutativity_of_blocks():
    rho = random_density(3, 2, 4)
    B = rho.matrix.reshape(3, 2, 3, 2).transpose(0, 2, 1, 3).reshape(9, 2, 2)
    assert d_n(rho).value == pytest.approx(total_non_commutativity(list(B)), abs=1e-12)


@pytest.mark.parametrize("dims", [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2)])
@pytest.mark.parametrize("seed", range(3))
def test_direct_matches_lapack_reference(dims, seed):
    rho = random_density(*dims, seed=seed)
    assert d_n(rho).value == pytest.approx(ref_measure(rho.matrix, *dims, "trace"), abs=1e-10)
    assert d_n_prime(rho).value == pytest.approx(ref_measure(rho.matrix, *dims, "hs"), abs=1e-10)


def test_bell_diagonal_examples():
    rho = bell_diagonal((0.5, 0.2, 0.1))
    assert d_n(rho).value == pytest.approx(0.1, abs=1e-12)
    assert d_n_prime(rho).value == pytest.approx(0.1 / (2 * SQ2) + 0.1 / SQ2 * math.sqrt(0.29), abs=1e-12)
    assert d_n_prime(rho).value == pytest.approx(0.0734342, abs=1e-7)


def test_measure_result_metadata():
    r = d_n(max_entangled(2), family="maxent")
    assert isinstance(r, MeasureResult)
    assert r.method is Method.DIRECT and r.norm is NormKind.TRACE
    assert r.metadata == {"dims": [2, 2], "family": "maxent"}
    with pytest.raises(ValueError):
        MeasureResult(-1.0, "DN", NormKind.TRACE, Method.DIRECT)


def test_quantum_classical_is_zero():
    for seed in range(10):
        rho = random_quantum_classical(2, 2, seed)
        assert d_n(rho).value < 1e-10 and d_n_prime(rho).value < 1e-10


def test_symmetric_examples():
    cc = classical_classical([[0.1, 0.2, 0.05], [0.3, 0.25, 0.1]])
    assert d_n_symmetric(cc).value == 0.0
    me = max_entangled(2)
    oracle = ref_measure(me.matrix, 2, 2) + ref_measure(me.matrix, 2, 2)  # swap-symmetric state
    assert oracle == pytest.approx(3.0)
    assert d_n_symmetric(me, NormKind.TRACE).value == pytest.approx(oracle, abs=1e-12)
    plus = np.full((2, 2), 0.5)
    qc = quantum_classical([(0.5, np.diag([1.0, 0.0])), (0.5, plus)])
    assert d_n(qc).value < 1e-12
    assert d_n_symmetric(qc, NormKind.TRACE).value > 0.1
    assert d_n_symmetric(qc, NormKind.HS).value > 0.1


def test_measure_values_batch_matches_single():
    stack = random_density_batch(2, 3, 20, seed=5)
    batch = measure_values(stack, 2, 3, NormKind.TRACE)
    single = [d_n(validate(m, 2, 3)).value for m in stack]
    np.testing.assert_allclose(batch, single, rtol=0, atol=1e-14)


# --- pure states --------------------------------------------------------------


def random_schmidt(rng, d):
    return SchmidtVector.normalized(np.abs(rng.standard_normal(d)))


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_pure_closed_exact_matches_direct(d, rng):
    for _ in range(20):
        lam = random_schmidt(rng, d)
        rho = pure_from_schmidt(lam, d)
        assert d_n_pure_closed(lam, NormKind.TRACE) == pytest.approx(d_n(rho).value, abs=1e-10)
        assert d_n_pure_closed(lam, NormKind.HS) == pytest.approx(d_n_prime(rho).value, abs=1e-10)


def test_pure_closed_examples():
    half = SchmidtVector((1 / SQ2, 1 / SQ2))
    assert d_n_pure_closed(half, NormKind.TRACE) == pytest.approx(1.5)
    assert d_n_pure_closed(half, NormKind.TRACE, "printed") == pytest.approx(1.5)
    assert d_n_pure_closed(half, NormKind.HS) == pytest.approx(1 + SQ2 / 4)
    assert d_n_pure_closed(half, NormKind.HS) == pytest.approx(d_n_prime(max_entangled(2)).value, abs=1e-12)
    assert d_n_pure_closed([1.0], NormKind.TRACE) == 0.0
    assert d_n_pure_closed([1.0], NormKind.HS) == 0.0
    # printed HS form carries a bare sqrt(2): nonzero on a product state
    assert d_n_pure_closed([1.0], NormKind.HS, "printed") == pytest.approx(SQ2)
    with pytest.raises(ValueError):
        d_n_pure_closed(half, variant="other")


@pytest.mark.parametrize("d", [2, 3])
def test_printed_trace_form_agrees_up_to_d3(d, rng):
    for _ in range(10):
        lam = random_schmidt(rng, d)
        assert d_n_pure_closed(lam, NormKind.TRACE, "printed") == pytest.approx(d_n_pure_closed(lam), abs=1e-12)


def test_printed_trace_form_misses_pairs_from_d4():
    lam = SchmidtVector((0.5,) * 4)
    assert d_n_pure_closed(lam) == pytest.approx(3.75)
    assert abs(d_n_pure_closed(lam, variant="printed") - 3.75) > 0.1


def test_two_qubit_pure_form():
    for l1 in np.linspace(0.05, 0.95, 10):
        l2 = math.sqrt(1 - l1 * l1)
        x = l1 * l2
        lam = SchmidtVector.normalized([l1, l2])
        assert d_n_pure_closed(lam) == pytest.approx(2 * x * (1 + x), abs=1e-12)
        assert d_n_pure_closed(lam, NormKind.HS) == pytest.approx(2 * x + SQ2 * x * x, abs=1e-12)


# --- published family formulas -------------------------------------------------


def test_werner_printed_zeros():
    assert werner_closed_paper(2, 0.25) == 0.0
    assert werner_closed_paper(3, 1 / 3) == pytest.approx(0.0, abs=1e-15)
    assert werner_closed_paper(4, 3 / 8) == 0.0
    assert werner_closed_paper(2, 0.0) == pytest.approx(2 / 3)
    assert d_n(werner(2, 0.0)).value == pytest.approx(1 / 6, abs=1e-12)
    with pytest.raises(ValueError):
        werner_closed_paper(5, 0.1)


@pytest.mark.parametrize(
    "d, ratio_trace",
    [(2, 4.0), (3, 23 / 6), (4, 13 / 5)],
)
def test_werner_printed_over_direct_ratio(d, ratio_trace):
    for a in (0.0, 0.1, 0.5, 1.0):
        direct = d_n(werner(d, a)).value
        assert werner_closed_paper(d, a) / direct == pytest.approx(ratio_trace, rel=1e-9)


def test_isotropic_printed_zeros_and_anchor():
    for d in (2, 3, 4):
        assert isotropic_closed_paper(d, 1 / d**2) == pytest.approx(0.0, abs=1e-15)
        assert isotropic_closed_paper(d, 1 / d**2, NormKind.HS) == pytest.approx(0.0, abs=1e-15)
    assert isotropic_closed_paper(2, 1.0) == pytest.approx(6.0)
    assert d_n(isotropic(2, 1.0)).value == pytest.approx(1.5, abs=1e-12)


def test_isotropic_printed_not_proportional_beyond_d2():
    ratios = [isotropic_closed_paper(3, b) / d_n(isotropic(3, b)).value for b in (0.0, 0.5, 1.0)]
    assert max(ratios) - min(ratios) > 0.1


# --- Bell-diagonal closed form -----------------------------------------------


def test_bell_closed_examples():
    assert bell_diagonal_closed((1, -1, 1)) == pytest.approx(1.5)
    assert bell_diagonal_closed((1, -1, 1), NormKind.HS) == pytest.approx(1 + SQ2 / 4)
    for c1 in (-0.8, 0.3, 1.0):
        assert bell_diagonal_closed((c1, 0, 0)) == 0.0
        assert bell_diagonal_closed((c1, 0, 0), NormKind.HS) == 0.0
        assert d_n(bell_diagonal((c1, 0, 0))).value < 1e-15
    for p in (0.0, 0.2, 0.7, 1.0):
        c = bell_coefficients_of(rho_family(1, p))
        assert bell_diagonal_closed(np.clip(c, -1, 1)) == pytest.approx(0.5 * p * (1 - p), abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_bell_closed_matches_direct(seed):
    c = random_bell_coefficients(np.random.default_rng(seed))
    rho = bell_diagonal(c)
    assert bell_diagonal_closed(c) == pytest.approx(d_n(rho).value, abs=1e-10)
    assert bell_diagonal_closed(c, NormKind.HS) == pytest.approx(d_n_prime(rho).value, abs=1e-10)


# --- invariants ---------------------------------------------------------------


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), dims=st.sampled_from([(2, 2), (2, 3), (3, 2)]))
def test_ordering_and_nullity_equivalence(seed, dims):
    rho = random_density(*dims, seed=seed)
    a, b = d_n(rho).value, d_n_prime(rho).value
    assert a >= b - 1e-10
    assert (a == 0) == (b == 0)
    assert a > 1e-3


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), dims=st.sampled_from([(2, 2), (2, 3), (3, 3)]))
def test_b_side_unitary_invariance(seed, dims):
    rng = np.random.default_rng(seed)
    rho = random_density(*dims, seed=seed)
    U = np.kron(np.eye(dims[0]), random_unitary(dims[1], rng))
    rot = validate(U @ rho.matrix @ U.conj().T, *dims)
    assert d_n(rot).value == pytest.approx(d_n(rho).value, abs=1e-9)
    assert d_n_prime(rot).value == pytest.approx(d_n_prime(rho).value, abs=1e-9)


def test_a_side_unitary_probe(rng):
    """Rotating the A basis mixes the blocks; the pair sum is not invariant."""
    devs = []
    for seed in range(40):
        rho = random_density(2, 2, seed)
        U = np.kron(random_unitary(2, rng), np.eye(2))
        rot = validate(U @ rho.matrix @ U.conj().T, 2, 2)
        devs.append(abs(d_n(rot).value - d_n(rho).value))
    assert max(devs) > 1e-4
    # diagonal (phase) unitaries on A only rephase the blocks, which is harmless
    P = np.kron(np.diag([1, np.exp(0.7j)]), np.eye(2))
    rho = random_density(2, 2, 3)
    assert d_n(validate(P @ rho.matrix @ P.conj().T, 2, 2)).value == pytest.approx(d_n(rho).value, abs=1e-12)


def test_sampled_maximality_two_qubits():
    stack = random_density_batch(2, 2, 10_000, seed=99)
    assert measure_values(stack, 2, 2, NormKind.TRACE).max() <= 1.5 + 1e-9
    assert measure_values(stack, 2, 2, NormKind.HS).max() <= 1 + SQ2 / 4 + 1e-9


def test_continuity_probe(rng):
    ratios = []
    for seed in range(50):
        rho = random_density(2, 2, seed).matrix
        pert = random_density(2, 2, 1000 + seed).matrix
        for eps in (1e-3, 1e-5):
            other = (1 - eps) * rho + eps * pert
            dist = np.linalg.svd(rho - other, compute_uv=False).sum()
            diff = abs(measure_values(rho, 2, 2) - measure_values(other, 2, 2))
            ratios.append(diff / dist)
    assert np.all(np.isfinite(ratios)) and max(ratios) < 50


@pytest.mark.parametrize("d", [2, 3, 4, 5, 6])
def test_max_entangled_general_d(d):
    # transposed pairs contribute 2/d^2 (trace) or sqrt(2)/d^2 (HS), single-match pairs 1/d^2:
    # d^3 - d^2 single-match and d(d-1)/2 transposed unordered pairs
    single = (d**3 - d**2) / d**2
    swaps = d * (d - 1) / 2 / d**2
    rho = max_entangled(d)
    assert d_n(rho).value == pytest.approx(single + 2 * swaps, abs=1e-9)
    assert d_n_prime(rho).value == pytest.approx(single + SQ2 * swaps, abs=1e-9)
    lam = SchmidtVector((1 / math.sqrt(d),) * d)
    assert d_n_pure_closed(lam) == pytest.approx(single + 2 * swaps, abs=1e-12)
