import numpy as np
import pytest

from nclebesgue.services.fock import FockTruncation
from nclebesgue.services.ncmeasure import (
    add,
    build_measure,
    from_classical,
    from_scalar_point,
    load_measure_spec,
    nc_lebesgue,
    scale,
)
from nclebesgue.services.gns import NotPositiveError
from nclebesgue.services.lebesgue import (
    classify,
    decompose,
    default_mass_tolerance,
    default_threshold,
    mk_factor_check,
    popescu_factor_check,
    verdict_for,
)
from nclebesgue.types.measure import Atom, ClassicalMeasureSpec, MomentTable
from nclebesgue.types.word import Word


def power(k: int) -> Word:
    return Word.of(*(1,) * k)


@pytest.fixture
def one_variable_m_plus_delta() -> MomentTable:
    return from_classical(ClassicalMeasureSpec(cosine=[1.0], atoms=[Atom(point=1, weight=1)]), 64)


def test_defaults():
    assert default_threshold(8) == 0.25
    assert default_threshold(64) == pytest.approx(10 / 64)
    assert default_threshold(8, mass=2.0) == pytest.approx(1 / 6)
    assert default_threshold(8, mass=9.0) == pytest.approx(0.05)
    assert default_mass_tolerance(8) == pytest.approx(2 / 9)
    assert default_mass_tolerance(2) == 0.25


@pytest.mark.parametrize("N", [8, 16, 32, 64])
def test_one_variable_atom_is_removed(one_variable_m_plus_delta, N):
    result = decompose(one_variable_m_plus_delta, N)
    assert result.N_out == N - 1
    assert result.singular_rank == 1
    error = result.mu_ac.max_abs_difference(nc_lebesgue(1, N - 1))
    assert error == pytest.approx(2 / (N + 1), abs=1e-9)


def test_parts_add_up(one_variable_m_plus_delta, m_plus_dirac):
    for measure, N in ((one_variable_m_plus_delta, 16), (m_plus_dirac, 6)):
        result = decompose(measure, N, N_out=3)
        recombined = add(result.mu_ac, result.mu_s)
        assert recombined.max_abs_difference(measure.truncate(3)) <= 1e-12


@pytest.mark.parametrize("N", [4, 6, 8])
def test_dirac_closed_form(dirac_10, N):
    result = decompose(dirac_10, N)
    for k in range(N):
        assert result.mu_ac.moment(power(k)) == pytest.approx(-1 / (N + 1), abs=1e-10)
    assert result.mu_ac.moment(Word.of(2)) == pytest.approx(0, abs=1e-10)
    assert result.ac_mass == pytest.approx(-1 / (N + 1), abs=1e-10)


def test_dirac_is_singular(dirac_10):
    report = classify(dirac_10, 8)
    assert report.verdict == "SINGULAR"
    assert report.ac_mass <= 0.1
    masses = [abs(decompose(dirac_10, N).ac_mass) for N in (4, 6, 8)]
    assert masses == sorted(masses, reverse=True)


def test_lebesgue_is_absolutely_continuous():
    m = nc_lebesgue(2, 6)
    result = decompose(m, 6)
    assert result.singular_rank == 0
    assert result.mu_ac.max_abs_difference(m.truncate(5)) < 1e-12
    assert classify(m, 6, result=result).verdict == "AC"


@pytest.mark.parametrize("t", [1.0, 4.0, 9.0])
def test_scaled_lebesgue_stays_absolutely_continuous(t):
    measure = scale(nc_lebesgue(2, 8), t)
    result = decompose(measure, 8)
    assert result.singular_rank == 0
    np.testing.assert_allclose(result.pencil_spectrum, 1 / (1 + t))
    assert result.ac_mass == pytest.approx(t)
    assert classify(measure, 8, result=result).verdict == "AC"


def test_one_variable_mixture_is_mixed(one_variable_m_plus_delta):
    report = classify(one_variable_m_plus_delta, 16)
    assert report.verdict == "MIXED"
    assert report.ac_mass == pytest.approx(1.0, abs=2 / 17 + 1e-9)
    assert report.sing_mass == pytest.approx(1.0, abs=2 / 17 + 1e-9)


def test_decomposition_is_additive_up_to_level_bias(lebesgue_d2, dirac_10):
    gaps = []
    for N in (4, 6, 8):
        joint = decompose(add(lebesgue_d2, dirac_10), N)
        separate = add(decompose(lebesgue_d2, N).mu_ac, decompose(dirac_10, N).mu_ac)
        gaps.append(joint.mu_ac.max_abs_difference(separate))
    np.testing.assert_allclose(gaps, [1 / 5, 1 / 7, 1 / 9], atol=1e-9)
    assert gaps == sorted(gaps, reverse=True)


def test_sum_of_singular_measures_is_singular(measures_dir):
    measure = build_measure(load_measure_spec(measures_dir / "two_diracs.json"))
    report = classify(measure, 8)
    assert report.verdict == "SINGULAR"
    assert report.ac_mass == pytest.approx(-0.2, abs=1e-9)


def test_decompose_preconditions(dirac_10):
    with pytest.raises(ValueError):
        decompose(dirac_10, 8, N_out=8)
    with pytest.raises(ValueError):
        decompose(dirac_10, 8, threshold=1.5)
    with pytest.raises(ValueError):
        decompose(dirac_10.truncate(4), 6)
    with pytest.raises(NotPositiveError):
        decompose(MomentTable(d=1, depth=2, moments={Word.of(1): 1}), 2)


def test_parts_are_reported_with_gram_diagnostics(m_plus_dirac):
    result = decompose(m_plus_dirac, 6, N_out=3)
    assert result.mu_ac.depth == result.mu_s.depth == 3
    assert len(result.pencil_spectrum) == 127
    assert all(0 < s <= 1 + 1e-8 for s in result.pencil_spectrum)
    report = result.to_report()
    assert report["singular_rank"] == result.singular_rank
    assert report["pencil_min"] == min(result.pencil_spectrum)


def test_verdict_rule():
    assert verdict_for(1.0, 0.01, 0.1) == "AC"
    assert verdict_for(0.05, 1.0, 0.1) == "SINGULAR"
    assert verdict_for(-0.05, 1.0, 0.1) == "SINGULAR"
    assert verdict_for(1.0, 1.0, 0.1) == "MIXED"


def random_symbol(seed: int) -> dict[Word, complex]:
    rng = np.random.default_rng(seed)
    words = [Word(), Word.of(1), Word.of(2), Word.of(1, 1), Word.of(1, 2), Word.of(2, 1), Word.of(2, 2)]
    values = rng.standard_normal(len(words)) + 1j * rng.standard_normal(len(words))
    return dict(zip(words, values))


@pytest.mark.parametrize(
    "symbol",
    [{Word(): 1.0}, {Word(): 1.0, Word.of(1): 0.3}, random_symbol(3)],
    ids=["identity", "one_plus_r1", "random_degree_2"],
)
def test_asymmetric_factorization_identities(symbol):
    report = mk_factor_check(symbol, FockTruncation(d=2, N=6))
    assert report.max_residual <= 1e-12


def test_asymmetric_factorization_needs_two_letters():
    with pytest.raises(ValueError):
        mk_factor_check({Word(): 1.0}, FockTruncation(d=1, N=6))


def test_popescu_factorization():
    truncation = FockTruncation(d=2, N=6)
    symbol = {Word(): 1.0, Word.of(2): -0.4, Word.of(2, 1): 0.1 + 0.3j}
    assert popescu_factor_check(symbol, truncation) <= 1e-12
    with pytest.raises(ValueError):
        popescu_factor_check(symbol, FockTruncation(d=2, N=2))
