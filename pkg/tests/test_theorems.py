"""Per-theorem checks: worked examples, limit reductions, preconditions."""

import numpy as np
import pytest

from condspec.errors import PreconditionError
from condspec.geometry import convex_hull, distance_to_polygon, is_convex_polygon
from condspec.matrixio import generate
from condspec.numkernel import eigenvalues, spectral_norm
from condspec.spectra import GridSpec, compute_field
from condspec.theorems import (
    Disk,
    TransientConfig,
    check_t1,
    check_t1e,
    check_t2,
    check_t2e,
    check_t3,
    check_t4,
    check_t4e,
    check_t5,
    check_t5e,
    check_t6,
    check_t7,
    check_t8,
    check_t9,
    check_t10,
    check_t10e,
    gerschgorin_condition_disks,
    numerical_range_boundary,
    run_suite,
)

DIAG = np.diag([1.0, -1.0])
JORDAN2 = np.array([[0.0, 1.0], [0.0, 0.0]])


def random_complex(n, seed):
    rng = np.random.default_rng(seed)
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


@pytest.fixture(scope="module")
def diag_field():
    return compute_field(DIAG, GridSpec.auto(DIAG, 0.5, n=161))


# --- T1 ------------------------------------------------------------------------

def test_t1_boundary_equality():
    r = check_t1(np.diag([4.0, 1.0]), 0.25)  # kappa = 4 = 1/eps: both sides true
    assert r.passed and r.details["member"]


def test_t1_both_false():
    r = check_t1(np.diag([4.0, 1.0]), 0.2)  # kappa = 4 < 5
    assert r.passed and not r.details["member"]


def test_t1_singular_short_circuit():
    r = check_t1(np.array([[1.0, 1.0], [1.0, 1.0]]), 0.3)
    assert r.passed and r.details["status"] == "singular short-circuit"


def test_t1e_companion():
    assert check_t1e(np.diag([4.0, 1.0]), 0.25).passed
    assert check_t1e(np.diag([4.0, 1.0]), 2.0).passed  # pseudo eps may exceed 1


# --- T2 ------------------------------------------------------------------------

def test_t2_diag(diag_field):
    r = check_t2(DIAG, 0.5, diag_field)
    assert r.passed and r.lhs <= 3.0 + diag_field.grid.cell_diagonal()


def test_t2_small_eps_members_hug_eigenvalues(diag_field):
    r = check_t2(DIAG, 0.01, diag_field)
    assert r.passed
    if r.lhs:  # any classified member stays near the unit-modulus eigenvalues
        assert r.lhs <= 1.03 * 1.0202 + diag_field.grid.cell_diagonal()


def test_t2e_companion(diag_field):
    r = check_t2e(DIAG, 0.5, diag_field)
    assert r.passed and r.rhs == pytest.approx(1.5 + diag_field.grid.cell_diagonal())


# --- T3 ------------------------------------------------------------------------

def test_t3_diag_two_components(diag_field):
    r = check_t3(DIAG, 0.2, diag_field)
    assert r.passed and r.lhs == 2.0 and r.details["vector_matrix_rank"] == 2


def test_t3_jordan_vacuous():
    r = check_t3(JORDAN2, 0.3, 161)
    assert r.passed and r.lhs == 1.0 and "vacuous" in r.details["status"]


def test_t3_normal_four_components():
    q, _ = np.linalg.qr(random_complex(4, 9))
    A = q @ np.diag([2.0, 2.0j, -2.0, -2.0j]) @ q.conj().T
    r = check_t3(A, 0.05, 201)
    assert r.passed and r.lhs == 4.0 and r.details["vector_matrix_rank"] == 4


# --- T4 ------------------------------------------------------------------------

def test_t4_diag(diag_field):
    r = check_t4(DIAG, 0.3, diag_field, seed=4)
    assert r.passed and r.details["samples_used"] > 0


def test_t4_member_case_reduction():
    # for z inside, the bound reduces to (1-eps)/(2 eps ||A||)
    eps = 0.3
    z = 1.05 + 0.0j
    smin = np.linalg.svd(z * np.eye(2) - DIAG, compute_uv=False)[-1]
    assert 1.0 / smin >= (1 - eps) / (2 * eps * spectral_norm(DIAG))
    r = check_t4(DIAG, eps, 161, z_samples=[z])
    assert r.passed


def test_t4e_companion():
    A = random_complex(4, 33)
    r = check_t4e(A, 0.3, 121, seed=5)
    assert r.passed


# --- T5 ------------------------------------------------------------------------

def test_t5_unitary_preserves():
    A = random_complex(3, 40)
    S = generate("rotation", 3, angle=1.1).entries
    r = check_t5(A, S, 0.2, seed=6)
    assert r.passed and r.details["kappa_S"] == pytest.approx(1.0, abs=1e-12)


def test_t5_diagonal_similarity():
    S = np.diag([2.0, 1.0])
    A = S @ random_complex(2, 41) @ np.linalg.inv(S)
    r = check_t5(A, S, 0.1, seed=7)
    assert r.passed and r.details["target_eps"] == pytest.approx(0.4)


def test_t5_precondition_error():
    with pytest.raises(PreconditionError):
        check_t5(DIAG, np.diag([2.0, 1.0]), 0.4)  # kappa^2 eps = 1.6


def test_t5e_companion():
    A = random_complex(3, 42)
    S = np.diag([1.5, 1.0, 1.0])
    assert check_t5e(A, S, 0.3, seed=8).passed


# --- T6 ------------------------------------------------------------------------

def test_t6_transient_growth_certified():
    A = np.array([[0.9, 5.0], [0.0, 0.9]])
    r = check_t6(A, 0.05, TransientConfig(M=2.0, k_max=50), grid=201)
    assert r.passed and r.details["status"] == "growth observed"
    assert r.lhs > r.rhs  # antecedent was certified, not vacuous


def test_t6_immediate_for_small_M():
    r = check_t6(DIAG, 0.3, TransientConfig(M=0.5, k_max=5))
    assert r.passed and r.details["status"].startswith("immediate")


def test_t6_eigenvalue_above_one_blows_up():
    A = np.diag([2.0, 0.1])
    r = check_t6(A, 0.05, TransientConfig(M=2.0, k_max=20), grid=161)
    assert r.passed and r.details["status"] == "growth observed"
    assert r.details["observed_sup"] > 2.0


def test_t6_precondition_strict():
    with pytest.raises(PreconditionError):
        check_t6(DIAG, 0.5, TransientConfig(M=2.0, k_max=5))  # M = 1/eps exactly


def test_transient_config_validation():
    with pytest.raises(ValueError):
        TransientConfig(M=0.0, k_max=5)
    with pytest.raises(ValueError):
        TransientConfig(M=1.0, k_max=0)


# --- T7 ------------------------------------------------------------------------

def test_t7_k_zero_trivial():
    r = check_t7(DIAG, 0.3, k_list=[0], grid=81)
    assert r.passed


def test_t7_small_eps_reduces_to_eigenvalue_power_bound():
    A = random_complex(3, 50)
    r = check_t7(A, 1e-6, k_list=[0, 1, 2, 3], grid=81)
    assert r.passed
    # directly: ||A^k|| >= |lambda|^k for eigenvalues
    from condspec.numkernel import power_norms
    norms = power_norms(A, 3)
    for lam in eigenvalues(A):
        for k in range(4):
            assert norms[k] >= abs(lam) ** k * (1 - 1e-9)


def test_t7_random_admissible_range():
    A = random_complex(4, 51)
    r = check_t7(A, 0.05, k_list=list(range(10)), grid=121, seed=9)
    assert r.passed  # (2*9+1)*0.05 = 0.95 < 1 admissible


def test_t7_inadmissible_k():
    with pytest.raises(PreconditionError):
        check_t7(DIAG, 0.2, k_list=[3], grid=81)  # 7*0.2 = 1.4 >= 1


# --- T8 ------------------------------------------------------------------------

def test_gerschgorin_reduces_to_classical():
    A = random_complex(3, 60)
    disks = gerschgorin_condition_disks(A, 1e-12)
    absA = np.abs(A)
    for j, d in enumerate(disks):
        assert d.center == complex(A[j, j])
        assert d.radius == pytest.approx(absA[j].sum() - absA[j, j], rel=1e-9)
    for lam in eigenvalues(A):  # classical Gerschgorin containment
        assert any(d.contains(complex(lam), slack=1e-9) for d in disks)


def test_gerschgorin_diag_formula():
    disks = gerschgorin_condition_disks(DIAG, 0.5)
    assert disks[0].center == 1.0 and disks[1].center == -1.0
    assert disks[0].radius == pytest.approx(np.sqrt(2) * 2.0, rel=1e-12)


def test_t8_containment_random():
    A = random_complex(4, 61)
    assert check_t8(A, 0.3, 121).passed


def test_t8e_companion(diag_field):
    from condspec.theorems import check_t8e
    assert check_t8e(DIAG, 0.3, diag_field).passed


def test_disk_validation():
    with pytest.raises(ValueError):
        Disk(0j, -1.0)


# --- numerical range -------------------------------------------------------------

def test_range_hermitian_degenerates_to_segment():
    nrb = numerical_range_boundary(DIAG, 64)
    assert np.abs(nrb.boundary_points.imag).max() <= 1e-10
    assert nrb.boundary_points.real.min() >= -1 - 1e-10
    assert nrb.boundary_points.real.max() <= 1 + 1e-10


def test_range_normal_matches_eigenvalue_hull():
    q, _ = np.linalg.qr(random_complex(3, 70))
    eig = np.array([1.0, 1.0j, -1.0 - 1.0j])
    A = q @ np.diag(eig) @ q.conj().T
    nrb = numerical_range_boundary(A, 512)
    hull = convex_hull(np.column_stack([eig.real, eig.imag]))
    pts = np.column_stack([nrb.boundary_points.real, nrb.boundary_points.imag])
    assert distance_to_polygon(pts, hull).max() <= 1e-6


def test_range_jordan_block_is_half_disk_radius():
    nrb = numerical_range_boundary(JORDAN2, 256)
    moduli = np.abs(nrb.boundary_points)
    assert np.abs(moduli - 0.5).max() <= 1e-6
    # Rayleigh-quotient oracle: random unit vectors never exceed the radius
    rng = np.random.default_rng(3)
    v = rng.standard_normal((4000, 2)) + 1j * rng.standard_normal((4000, 2))
    v /= np.linalg.norm(v, axis=1)[:, None]
    rayleigh = np.abs(np.einsum("ki,ij,kj->k", v.conj(), JORDAN2, v))
    assert rayleigh.max() <= 0.5 + 1e-12
    assert rayleigh.max() >= 0.5 - 1e-2


def test_range_invariants():
    A = random_complex(5, 71)
    nrb = numerical_range_boundary(A, 128)
    norm = spectral_norm(A)
    assert np.abs(nrb.boundary_points).max() <= norm + 1e-10
    poly = nrb.polygon()
    assert is_convex_polygon(poly, tol=1e-9 * (1 + norm) ** 2)
    eig = eigenvalues(A)
    pts = np.column_stack([eig.real, eig.imag])
    assert distance_to_polygon(pts, poly).max() <= 1e-8 * (1 + norm) + norm * (np.pi / 128) ** 2


def test_range_rejects_few_angles():
    with pytest.raises(ValueError):
        numerical_range_boundary(DIAG, 4)


# --- T9 ------------------------------------------------------------------------

def test_t9_small_eps_reduces_to_spectrum_in_range():
    A = random_complex(3, 80)
    r = check_t9(A, 1e-6, 121)
    assert r.passed


def test_t9_normal_members_near_range():
    q, _ = np.linalg.qr(random_complex(3, 81))
    A = q @ np.diag([1.0, -1.0, 1.0j]) @ q.conj().T
    r = check_t9(A, 0.2, 161)
    assert r.passed


def test_t9_jordan_disk(diag_field):
    r = check_t9(JORDAN2, 0.2, 161)
    # eps1 = 0.5 at ||A|| = 1: members stay within 0.5 + slack of the half disk
    assert r.passed and r.rhs == pytest.approx(0.5 + r.slack_used)


# --- T10 -----------------------------------------------------------------------

def test_t10_identity_map():
    r = check_t10(random_complex(3, 90), 0.0, 1.0, 0.3, seed=10)
    assert r.passed and r.lhs <= 1e-10


def test_t10_beta_zero_singleton():
    r = check_t10(random_complex(3, 91), 2.0 + 1.0j, 0.0, 0.3, seed=11)
    assert r.passed and r.details["member_at_alpha"]


def test_t10_random_value_equality():
    A = random_complex(4, 92)
    alpha = 2.0 + 1.0j
    beta = 3.0 * np.exp(1j * np.pi / 7)
    r = check_t10(A, alpha, beta, 0.3, count=100, seed=12)
    assert r.passed and r.lhs <= 1e-10 and r.details["membership_mismatches"] == 0


def test_t10e_companion():
    A = random_complex(3, 93)
    r = check_t10e(A, 1.0 - 2.0j, 0.5j, 0.4, seed=13)
    assert r.passed and r.lhs <= 1e-10


# --- suite ------------------------------------------------------------------------

def test_suite_runs_all_and_is_deterministic():
    A = random_complex(3, 100)
    r1 = run_suite(A, [0.1, 0.3], grid=121, samples=16, seed=3)
    r2 = run_suite(A, [0.1, 0.3], grid=121, samples=16, seed=3)
    assert [r.to_dict() for r in r1] == [r.to_dict() for r in r2]
    assert all(r.passed for r in r1)
    ids = {r.theorem_id for r in r1}
    assert "T3σ" in ids and "T10ε" in ids and len(ids) == 19


def test_suite_eps_to_zero_surrogate_reduces_to_plain_spectrum():
    # at eps = 1e-6 every check degenerates to its eigenvalue-theorem form
    A = random_complex(4, 101)
    reports = run_suite(A, [1e-6], grid=121, samples=16, seed=4)
    assert all(r.passed for r in reports)
    t2 = next(r for r in reports if r.theorem_id == "T2σ")
    if not t2.skipped and t2.lhs:
        assert t2.lhs <= spectral_norm(A) * (1 + 1e-5) + 2 * t2.slack_used


def test_suite_skips_precondition_violations():
    reports = run_suite(DIAG, [0.4], grid=121, samples=8, theorems=["t5"])
    assert len(reports) == 2  # T5σ skipped + T5ε runs
    skipped = [r for r in reports if r.skipped]
    assert len(skipped) == 1 and skipped[0].theorem_id == "T5σ"


def test_suite_strict_raises():
    with pytest.raises(PreconditionError):
        run_suite(DIAG, [0.4], grid=121, theorems=["t5"], strict=True)


def test_suite_rejects_unknown_selector():
    with pytest.raises(ValueError):
        run_suite(DIAG, [0.2], theorems=["t11"])


def test_suite_propagates_grid_too_small():
    from condspec.errors import GridTooSmallError
    from condspec.spectra import GridSpec
    with pytest.raises(GridTooSmallError):
        run_suite(DIAG, [0.5], grid=GridSpec(-1, 1, -1, 1, 21, 21))


def test_suite_degenerate_1x1():
    reports = run_suite(np.array([[1.5 - 0.5j]]), [0.2, 0.4], grid=61, samples=8)
    assert all(r.passed for r in reports)
    t3 = [r for r in reports if r.theorem_id == "T3σ"]
    assert t3 and all(r.lhs == 1.0 for r in t3)
