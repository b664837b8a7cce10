import json

import numpy as np
import pytest
from nclebesgue.services.fock import FockTruncation, FockVector, TruncationOverflowError, apply_word
from nclebesgue.services.freemonoid import enumerate_words
from nclebesgue.services.gns import gram_matrix
from nclebesgue.services.ncmeasure import (
    MeasureSpecError,
    NegativeDensityError,
    NotRowContractionError,
    add,
    build_measure,
    buildable_depth,
    from_classical,
    from_scalar_point,
    from_vector_state,
    load_measure_spec,
    nc_lebesgue,
    positivity_check,
    scale,
    subtract,
)
from nclebesgue.types.measure import Atom, ClassicalMeasureSpec, MomentTable
from nclebesgue.types.word import Word


def w(text: str, d: int = 2) -> Word:
    return Word.parse(text, d)


def test_nc_lebesgue():
    m = nc_lebesgue(2, 4)
    assert m.moment(Word()) == 1
    assert m.moment(w("12")) == 0
    np.testing.assert_array_equal(gram_matrix(m, 4), np.eye(31))


class TestVectorStates:
    truncation = FockTruncation(d=2, N=5)

    def vector(self, mapping) -> FockVector:
        return FockVector.from_mapping(self.truncation, {w(k): v for k, v in mapping.items()})

    def test_vacuum_vector_gives_lebesgue(self):
        x = self.vector({"e": 1})
        assert from_vector_state(x, depth=4).moments == nc_lebesgue(2, 4).moments

    def test_wandering_basis_vector(self):
        x = self.vector({"1": 1})
        assert from_vector_state(x, depth=4).moments == {Word(): 1}

    def test_off_diagonal_state(self):
        # ⟨e_1, L^α e_∅⟩ = δ_{α,1}
        table = from_vector_state(self.vector({"1": 1}), self.vector({"e": 1}), depth=3)
        assert table.moments == {w("1"): 1}
        # ⟨e_∅, L^α e_1⟩ vanishes for every α
        swapped = from_vector_state(self.vector({"e": 1}), self.vector({"1": 1}), depth=3)
        assert swapped.moments == {}

    def test_overflow(self):
        x = self.vector({"12": 1})
        with pytest.raises(TruncationOverflowError):
            from_vector_state(x, depth=4)

    def test_moments_depend_only_on_outer_part(self):
        x = self.vector({"e": 1, "1": 0.5})
        for k in (1, 2):
            shifted = apply_word("right", Word.of(k), x)
            a = from_vector_state(x, depth=3)
            b = from_vector_state(shifted, depth=3)
            assert a.max_abs_difference(b) < 1e-15

    def test_vector_state_is_positive_and_hermitian(self):
        x = self.vector({"e": 1, "2": 0.3 - 0.4j, "12": 0.2j})
        table = from_vector_state(x, depth=3)
        gram = gram_matrix(table, 3)
        np.testing.assert_allclose(gram, gram.conj().T)
        assert positivity_check(table, 3).is_positive


def test_scalar_point_dirac():
    mu = from_scalar_point((1, 0), 4)
    for word in enumerate_words(2, 4):
        assert mu.moment(word) == (0 if 2 in word.letters else 1)
    assert mu.moment(w("11")) == 1
    assert from_scalar_point((0, 0), 4).moments == nc_lebesgue(2, 4).moments


def test_scalar_point_generic():
    z = (0.6, 0.8j)
    mu = from_scalar_point(z, 3)
    assert mu.moment(w("12")) == pytest.approx(0.6 * 0.8j)
    assert mu.moment(w("221")) == pytest.approx((0.8j) ** 2 * 0.6)
    with pytest.raises(NotRowContractionError):
        from_scalar_point((1, 1), 2)


def test_from_classical():
    atom_only = ClassicalMeasureSpec(atoms=[Atom(point=1, weight=1)])
    assert all(from_classical(atom_only, 5).moment(Word.of(*(1,) * k)) == 1 for k in range(6))
    density_one = ClassicalMeasureSpec(cosine=[1.0])
    assert from_classical(density_one, 5).moments == nc_lebesgue(1, 5).moments
    both = from_classical(ClassicalMeasureSpec(cosine=[1.0], atoms=[Atom(point=1, weight=1)]), 5)
    assert [both.moment(Word.of(*(1,) * k)) for k in range(4)] == [2, 1, 1, 1]


def test_classical_density_coefficients():
    # w(θ) = 1 + ½cos θ + ½sin θ: ∫ ζ w dm = (1 + i)/4
    spec = ClassicalMeasureSpec(cosine=[1.0, 0.5], sine=[0.5])
    assert from_classical(spec, 2).moment(Word.of(1)) == pytest.approx(0.25 + 0.25j)
    with pytest.raises(NegativeDensityError):
        from_classical(ClassicalMeasureSpec(cosine=[0.0, 1.0]), 2)
    with pytest.raises(ValueError):
        Atom(point=0.5, weight=1)


def test_cone_operations(lebesgue_d2):
    m = lebesgue_d2
    assert add(m, m) == scale(m, 2)
    dirac = from_scalar_point((1, 0), 8)
    assert add(dirac, m).moment(Word()) == 2
    assert scale(dirac, 0).moments == {}
    assert subtract(add(dirac, m), m).max_abs_difference(dirac) == 0
    assert add(dirac, from_scalar_point((1, 0), 3)).depth == 3
    with pytest.raises(ValueError):
        scale(m, -1)
    with pytest.raises(ValueError):
        add(m, nc_lebesgue(1, 8))


def test_positivity_check(lebesgue_d2):
    report = positivity_check(lebesgue_d2, 3)
    assert report.is_positive and report.min_eigenvalue == pytest.approx(1.0)
    assert positivity_check(from_scalar_point((1, 0), 2), 2).is_positive
    invalid = MomentTable(d=1, depth=1, moments={Word.of(1): 1})
    report = positivity_check(invalid, 1)
    assert not report.is_positive
    assert report.min_eigenvalue <= -0.5


def test_shipped_specs_are_positive(measures_dir):
    for path in sorted(measures_dir.glob("*.json")):
        spec = load_measure_spec(path)
        measure = build_measure(spec)
        report = positivity_check(measure, spec.check_level)
        if spec.name == "invalid_table":
            assert not report.is_positive and report.min_eigenvalue <= -0.5
        else:
            assert report.min_eigenvalue >= -1e-10, path.name


def test_vector_state_spec_matches_direct_construction(measures_dir):
    spec = load_measure_spec(measures_dir / "vector_state_outer.json")
    measure = build_measure(spec, depth=8)
    truncation = FockTruncation(d=2, N=4)
    x = FockVector.from_mapping(truncation, {Word(): 1, w("1"): 0.5})
    direct = from_vector_state(x, depth=3)
    assert measure.depth == 8
    assert measure.max_abs_difference(direct, 3) == 0
    assert measure.moment(w("1")) == pytest.approx(0.5)
    assert measure.moment(w("11")) == 0


def test_sum_spec_weights(tmp_path):
    path = tmp_path / "weighted.json"
    path.write_text(
        json.dumps(
            {
                "kind": "sum",
                "depth": 3,
                "terms": [{"kind": "vacuum"}, {"kind": "scalar_point", "point": [0, [0, 1]]}],
                "weights": [2, 0.5],
            }
        )
    )
    measure = build_measure(load_measure_spec(path))
    assert measure.mass == pytest.approx(2.5)
    assert measure.moment(w("2")) == pytest.approx(0.5j)


def test_buildable_depth(measures_dir):
    point = load_measure_spec(measures_dir / "point_06_08.json")
    # 2^{D+1} − 1 words to depth D.
    assert buildable_depth(point, 60, max_words=20_000) == 13
    assert buildable_depth(point, 60, max_words=2**14 - 1) == 13
    assert buildable_depth(point, 60, max_words=2**14 - 2) == 12
    assert buildable_depth(point, 5, max_words=20_000) == 5
    assert buildable_depth(load_measure_spec(measures_dir / "dirac_10.json"), 200) == 200
    assert buildable_depth(load_measure_spec(measures_dir / "invalid_table.json"), 60) == 1
    assert buildable_depth(load_measure_spec(measures_dir / "m_plus_dirac.json"), 90) == 90
    with pytest.raises(ValueError):
        build_measure(point, 60)


@pytest.mark.parametrize(
    "content",
    [
        "{not json",
        json.dumps({"kind": "bogus"}),
        json.dumps({"kind": "vacuum", "unexpected": 1}),
        json.dumps({"kind": "table", "d": 2, "depth": 1, "moments": {"3": 1}}),
        json.dumps({"kind": "table", "d": 2, "depth": 1, "moments": {"12": 1}}),
    ],
)
def test_bad_specs_raise_measure_spec_error(tmp_path, content):
    path = tmp_path / "bad.json"
    path.write_text(content)
    with pytest.raises(MeasureSpecError):
        build_measure(load_measure_spec(path))


def test_missing_spec(tmp_path):
    with pytest.raises(MeasureSpecError):
        load_measure_spec(tmp_path / "absent.json")


def test_moment_table_frame():
    mu = from_scalar_point((1, 0), 2)
    frame = mu.to_frame()
    assert list(frame["word"]) == ["e", "1", "2", "11", "12", "21", "22"]
    np.testing.assert_array_equal(frame["re"], [1, 1, 0, 1, 0, 0, 0])
    assert np.linalg.eigvalsh(gram_matrix(mu, 2)).min() > -1e-12
    gram = gram_matrix(mu, 2)
    np.testing.assert_array_equal(gram, gram.conj().T)
