import numpy as np
import pytest

from radmul.fock import Word
from radmul.operators import build_T, left_mult, op_norm
from radmul.symbols import RadialSymbol
from radmul.verify import (ReducedWord, embed, embedding_suite, fock_suite,
                           lemma_suite, main_theorem_suite, norm_bound_suite,
                           operator_suite, random_reduced_word, spanning_check,
                           vacuum_expectation, verify_main_theorem, word_operator)


def unit_word(space, *indexed_letters, right=None):
    """Reduced word of group unitaries with an optional right coefficient."""
    letters = tuple(space.amalgam.factor(i).unitary(g) for i, g in indexed_letters)
    coeffs = [space.base.identity()] * len(indexed_letters)
    coeffs.append(space.base.identity() if right is None else right)
    return ReducedWord(letters=letters, coeffs=tuple(coeffs),
                       factor_indices=tuple(i for i, _ in indexed_letters))


# ---------------------------------------------------------------- embedding

def test_embed_base_element_is_left_multiplication(mat2_space):
    rng = np.random.default_rng(0)
    b = mat2_space.base.random(rng)
    got = embed(mat2_space, mat2_space.amalgam.factor(1).from_base(b)).matrix()
    want = left_mult(mat2_space, b).matrix()
    assert np.abs(got - want).max() <= 1e-13


def test_embed_identity_acts_as_identity(dih_space):
    got = embed(dih_space, dih_space.amalgam.factor(0).identity()).matrix()
    assert np.abs(got - np.eye(dih_space.dim)).max() <= 1e-13


def test_embed_unitary_creates_on_vacuum(dih_space):
    a = dih_space.amalgam.factor(0).unitary(1)
    v = embed(dih_space, a)(dih_space.vacuum())
    assert list(v.coeffs) == [Word(((0, 1),))]


def test_embed_unitary_annihilates_matching_letter(dih_space):
    a = dih_space.amalgam.factor(0).unitary(1)
    w = dih_space.word_vector(Word(((0, 1), (1, 1))))
    v = embed(dih_space, a)(w)  # u^2 = 1 strips the leading letter
    assert list(v.coeffs) == [Word(((1, 1),))]


def test_embedding_suite_passes(dih_space, mat2_space, cy3_space):
    for space in (dih_space, mat2_space, cy3_space):
        assert embedding_suite(space).passed


# ---------------------------------------------------------------- word operators

def test_word_operator_vacuum_images(mat2_space):
    rng = np.random.default_rng(1)
    b = mat2_space.base.random(rng)
    # n = 0: plain left multiplication
    rw = ReducedWord(letters=(), coeffs=(b,), factor_indices=())
    v = word_operator(mat2_space, rw)(mat2_space.vacuum())
    assert np.allclose(v.coeff(Word()), b)
    # n = 1 and n = 2 unitary words land on the canonical word vectors
    v = word_operator(mat2_space, unit_word(mat2_space, (0, 1)))(mat2_space.vacuum())
    assert list(v.coeffs) == [Word(((0, 1),))]
    v = word_operator(mat2_space, unit_word(mat2_space, (0, 1), (1, 1)))(mat2_space.vacuum())
    assert list(v.coeffs) == [Word(((0, 1), (1, 1)))]
    assert np.allclose(v.coeff(Word(((0, 1), (1, 1)))), np.eye(2))


def test_word_operator_rejects_bad_words(dih_space):
    fac = dih_space.amalgam.factor(0)
    with pytest.raises(ValueError):
        ReducedWord(letters=(fac.identity(),), coeffs=(np.eye(1), np.eye(1)),
                    factor_indices=(0,))  # expectation not zero
    with pytest.raises(ValueError):
        ReducedWord(letters=(fac.unitary(1), fac.unitary(1)),
                    coeffs=(np.eye(1),) * 3, factor_indices=(0, 0))


def test_vacuum_expectation(dih_space):
    from radmul.operators import identity_op
    assert vacuum_expectation(dih_space, identity_op(dih_space))[0, 0] == pytest.approx(1.0)
    a = dih_space.amalgam.factor(0).unitary(1)
    assert np.abs(vacuum_expectation(dih_space, embed(dih_space, a))).max() < 1e-15
    b = np.array([[1.5 - 0.5j]])
    rw = ReducedWord(letters=(), coeffs=(b,), factor_indices=())
    assert vacuum_expectation(dih_space, word_operator(dih_space, rw))[0, 0] \
        == pytest.approx(b[0, 0])


# ---------------------------------------------------------------- multiplier action

def test_multiplier_on_identity(dih_space):
    phi = RadialSymbol.indicator01()
    T = build_T(dih_space, phi, 16)
    assert np.abs(T.apply_matrix(np.eye(dih_space.dim))
                  - phi(0) * np.eye(dih_space.dim)).max() <= 1e-12


def test_delta0_kills_embedded_letter(dih_space):
    T = build_T(dih_space, RadialSymbol.delta0(), 16)
    A = embed(dih_space, dih_space.amalgam.factor(0).unitary(1)).matrix()
    guard = dih_space.guard_mask(dih_space.L_max - 1)
    assert np.abs(T.apply_matrix(A)[:, guard]).max() <= 1e-12


def test_indicator_kills_length_two_word(dih_space):
    T = build_T(dih_space, RadialSymbol.indicator01(), 16)
    A = word_operator(dih_space, unit_word(dih_space, (0, 1), (1, 1))).matrix()
    guard = dih_space.guard_mask(dih_space.L_max - 2)
    assert np.abs(T.apply_matrix(A)[:, guard]).max() <= 1e-11


def test_constant_symbol_fixes_all_words(dih_space):
    T = build_T(dih_space, RadialSymbol.constant(1.0), 16)
    rng = np.random.default_rng(2)
    for n in range(3):
        A = word_operator(dih_space, random_reduced_word(rng, dih_space, n)).matrix()
        assert np.abs(T.apply_matrix(A) - A).max() <= 1e-12


def test_delta0_reproduces_vacuum_expectation(mat2_space):
    # T for the unit point mass keeps exactly the length-0 part: on sums of
    # reduced words it reproduces the expectation onto N as an operator
    rng = np.random.default_rng(3)
    T = build_T(mat2_space, RadialSymbol.delta0(), 16)
    b = mat2_space.base.random(rng)
    w1 = word_operator(mat2_space, random_reduced_word(rng, mat2_space, 1))
    w2 = word_operator(mat2_space, random_reduced_word(rng, mat2_space, 2))
    A_op = left_mult(mat2_space, b)
    A = A_op.matrix() + w1.matrix() + w2.matrix()
    want = left_mult(mat2_space, b).matrix()  # = lambda(vacuum expectation)
    guard = mat2_space.guard_mask(mat2_space.L_max - 2)
    assert np.abs((T.apply_matrix(A) - want)[:, guard]).max() <= 1e-10


def test_main_theorem_suites_pass(dih_space, mat2_space, acceptance_symbols):
    for space in (dih_space, mat2_space):
        rep = main_theorem_suite(space, acceptance_symbols, 32, seed=11,
                                 words_per_length=6)
        assert rep.passed, [c.name for c in rep.failed()]


def test_case_two_pipeline_on_cyclic3(cy3_space, acceptance_symbols):
    rep = main_theorem_suite(cy3_space, acceptance_symbols, 32, seed=12,
                             words_per_length=4, max_len=2)
    assert rep.passed, [c.name for c in rep.failed()]
    rep = lemma_suite(cy3_space, [RadialSymbol.indicator01()], 32, seed=12)
    assert rep.passed, [c.name for c in rep.failed()]


def test_verify_main_theorem_wrapper(dih_space):
    rep = verify_main_theorem(dih_space, [RadialSymbol.delta0()], 24, seed=5,
                              words_per_length=4, bound_samples=10)
    assert rep.passed
    names = {c.name for c in rep.checks}
    assert "theorem_action_on_words" in names
    assert "multiplier_case_rules" in names
    assert "norm_bound_upper[0]" in names
    assert "multiplier_right_module" in names


# ---------------------------------------------------------------- spanning

def test_spanning_ranks(dih_space, mat2_space):
    rep = spanning_check(dih_space, 2)
    assert rep.passed
    assert rep.checks[0].details["rank"] == 5

    rep = spanning_check(dih_space, 0)
    assert rep.checks[0].details["rank"] == dih_space.dim_N == 1

    rep = spanning_check(mat2_space, 1)
    count = sum(1 for w in mat2_space.words if len(w) <= 1)
    assert rep.checks[0].details["rank"] == count * mat2_space.dim_N == 12


def test_spanning_full_truncation(dih_space):
    rep = spanning_check(dih_space)
    assert rep.passed
    assert rep.checks[0].details["rank"] == dih_space.dim


# ---------------------------------------------------------------- misc suites

def test_fock_and_operator_suites(dih_space, mat2_space):
    for space in (dih_space, mat2_space):
        assert fock_suite(space).passed
        assert operator_suite(space).passed


def test_norm_bound_suite(dih_space, acceptance_symbols):
    rep = norm_bound_suite(dih_space, acceptance_symbols, 60, seed=13, samples=20)
    assert rep.passed, [c.name for c in rep.failed()]


def test_report_determinism(dih_space):
    a = main_theorem_suite(dih_space, [RadialSymbol.delta0()], 24, seed=21,
                           words_per_length=3)
    b = main_theorem_suite(dih_space, [RadialSymbol.delta0()], 24, seed=21,
                           words_per_length=3)
    assert a.to_json() == b.to_json()


def test_complex_symbol_pipeline(dih_space):
    # fully complex head, tail coefficient, ratio and limit: catches any
    # conjugation slip in the weight tables and towers
    from radmul.symbols import GeometricTail
    phi = RadialSymbol(head=(1.0, 0.3j),
                       tail=GeometricTail(0.8 - 0.2j, 0.4 + 0.35j, 0.15 - 0.1j))
    rep = lemma_suite(dih_space, [phi], 48, seed=31)
    assert rep.passed, [c.name for c in rep.failed()]
    rep = main_theorem_suite(dih_space, [phi], 48, seed=31, words_per_length=6)
    assert rep.passed, [c.name for c in rep.failed()]


def test_seed_steers_sampling(dih_space):
    w1 = random_reduced_word(np.random.default_rng(21), dih_space, 2)
    w2 = random_reduced_word(np.random.default_rng(21), dih_space, 2)
    w3 = random_reduced_word(np.random.default_rng(22), dih_space, 2)
    m1 = word_operator(dih_space, w1).matrix()
    m2 = word_operator(dih_space, w2).matrix()
    m3 = word_operator(dih_space, w3).matrix()
    assert np.abs(m1 - m2).max() == 0
    assert np.abs(m1 - m3).max() > 1e-6
