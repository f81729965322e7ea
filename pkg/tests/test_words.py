"""
Tests for words.py - PSL(2,Z) words and matrices.
"""

import pytest

from farey.errors import ParseError
from farey.words import (
    IDENTITY,
    L,
    LL,
    S,
    Mat,
    TraceKind,
    Word,
    classify,
    conjugacy_normal_form,
    cyclic_normal_form,
    enumerate_words,
    invert,
    is_cyclically_reduced,
    matrix_to_word,
    normalize,
    parse_matrix,
    parse_word,
    word_to_matrix,
)


class TestWord:
    """Tests for the Word value type."""

    def test_rejects_unreduced_letters(self):
        """Adjacent S letters are not a normal form."""
        with pytest.raises(ValueError):
            Word((S, S))

    def test_rejects_adjacent_l_letters(self):
        with pytest.raises(ValueError):
            Word((L, LL))

    def test_identity_prints_as_one(self):
        assert str(IDENTITY) == "1"
        assert IDENTITY.is_identity

    def test_str_and_len(self):
        w = Word((L, S, LL, S))
        assert str(w) == "LSLLS"
        assert len(w) == 4

    def test_multiplication_cancels(self):
        """L·L = LL and LL·L = 1."""
        assert Word((L,)) * Word((L,)) == Word((LL,))
        assert Word((LL,)) * Word((L,)) == IDENTITY

    def test_powers(self):
        t = Word((L, S))
        assert len(t ** 3) == 6
        assert t ** -1 == Word((S, LL))
        assert t ** 0 == IDENTITY


class TestNormalize:
    """Tests for normalize()."""

    def test_cube_of_l(self):
        assert normalize(["L", "L", "L"]) == IDENTITY

    def test_square_of_s(self):
        assert normalize(["S", "S"]) == IDENTITY

    def test_inverse_token(self):
        assert normalize(["L", "L^-1"]) == IDENTITY
        assert normalize(["L⁻¹"]) == Word((LL,))

    def test_cascading_cancellation(self):
        """L S S L collapses to LL."""
        assert normalize(["L", "S", "S", "L"]) == Word((LL,))

    def test_unknown_token(self):
        with pytest.raises(ParseError) as exc:
            normalize(["L", "X"])
        assert exc.value.token == "X"


class TestParseWord:
    """Tests for parse_word()."""

    def test_plain_word(self):
        assert parse_word("LSLLS") == Word((L, S, LL, S))

    def test_case_insensitive(self):
        assert parse_word("lsl") == Word((L, S, L))

    def test_group_power(self):
        w = parse_word("(LS)^6")
        assert len(w) == 12
        assert str(w) == "LS" * 6

    def test_negative_power(self):
        assert parse_word("L^-1") == Word((LL,))
        assert parse_word("(LS)^-1") == Word((S, LL))

    def test_identity_spellings(self):
        assert parse_word("1") == IDENTITY
        assert parse_word("") == IDENTITY
        assert parse_word("S^2") == IDENTITY

    def test_separators_ignored(self):
        assert parse_word("L S·LL*S") == parse_word("LSLLS")

    def test_bad_letter_names_token(self):
        with pytest.raises(ParseError) as exc:
            parse_word("LSX")
        assert exc.value.token == "X"

    def test_unclosed_group(self):
        with pytest.raises(ParseError):
            parse_word("(LS")


class TestMat:
    """Tests for the Mat value type."""

    def test_determinant_checked(self):
        with pytest.raises(ValueError):
            Mat(1, 1, 1, 1)

    def test_sign_is_canonical(self):
        assert Mat(-1, 0, 0, -1) == Mat.identity()
        assert Mat(0, -1, 1, 0) == Mat(0, 1, -1, 0)

    def test_str(self):
        assert str(Mat(2, 1, 1, 1)) == "2,1;1,1"

    def test_inverse(self):
        m = Mat(2, 1, 1, 1)
        assert m @ m.inverse() == Mat.identity()


class TestWordToMatrix:
    """Tests for word_to_matrix()."""

    def test_translation(self):
        """LS is the translation z -> z + 1."""
        assert word_to_matrix(parse_word("LS")) == Mat(1, 1, 0, 1)

    def test_hyperbolic_examples(self):
        assert word_to_matrix(parse_word("LSLLS")) == Mat(2, 1, 1, 1)
        assert word_to_matrix(parse_word("LLSLS")) == Mat(1, 1, 1, 2)

    def test_identity(self):
        assert word_to_matrix(IDENTITY) == Mat.identity()


class TestMatrixToWord:
    """Tests for matrix_to_word()."""

    def test_examples(self):
        assert matrix_to_word(Mat(2, 1, 1, 1)) == parse_word("LSLLS")
        assert matrix_to_word(Mat(1, 1, 1, 2)) == parse_word("LLSLS")

    def test_generators(self):
        assert matrix_to_word(Mat(0, -1, 1, 0)) == Word((S,))
        assert matrix_to_word(Mat(1, -1, 1, 0)) == Word((L,))
        assert matrix_to_word(Mat.identity()) == IDENTITY

    def test_round_trip_short_words(self):
        for w in enumerate_words(8):
            assert matrix_to_word(word_to_matrix(w)) == w


class TestClassify:
    """Tests for classify()."""

    def test_hyperbolic(self):
        assert str(classify(parse_word("LSLLS"))) == "hyperbolic trace=3"

    def test_elliptic_orders(self):
        s = classify(Word((S,)))
        assert s.kind == TraceKind.ELLIPTIC and s.order == 2
        assert str(s) == "elliptic order=2 trace=0"
        assert classify(Word((L,))).order == 3

    def test_parabolic(self):
        assert classify(parse_word("LS")).kind == TraceKind.PARABOLIC

    def test_identity(self):
        assert classify(IDENTITY).kind == TraceKind.IDENTITY


class TestInvert:
    """Tests for invert()."""

    def test_inverse_word(self):
        w = parse_word("LSLLS")
        assert invert(w) == parse_word("SLSLL")
        assert (w * invert(w)).is_identity


class TestConjugacyNormalForm:
    """Tests for conjugacy_normal_form() and cyclic_normal_form()."""

    def test_odd_word_strips_s(self):
        c, h = conjugacy_normal_form(parse_word("SLS"))
        assert c == Word((L,))
        assert h == Word((S,))

    def test_ls_stays_ls(self):
        assert cyclic_normal_form(parse_word("LS")) == parse_word("LS")
        assert cyclic_normal_form(parse_word("SL")) == parse_word("LS")

    def test_rotation_with_conjugator(self):
        w = parse_word("LLSLS")
        c, h = conjugacy_normal_form(w)
        assert c == parse_word("LSLLS")
        assert invert(h) * w * h == c

    def test_conjugator_identity_law(self):
        for w in enumerate_words(7):
            c, h = conjugacy_normal_form(w)
            assert invert(h) * w * h == c
            assert is_cyclically_reduced(c)

    def test_class_invariant(self):
        """Conjugates share one normal form."""
        w = parse_word("LSLSLLS")
        for g in enumerate_words(4):
            assert cyclic_normal_form(g * w * invert(g)) == cyclic_normal_form(w)


class TestEnumerateWords:
    """Tests for enumerate_words()."""

    def test_counts(self):
        assert len(enumerate_words(0)) == 1
        assert len(enumerate_words(1)) == 4
        assert len(enumerate_words(2)) == 8
        assert len(enumerate_words(3)) == 14

    def test_all_distinct(self):
        words = enumerate_words(6)
        assert len(set(words)) == len(words)


class TestParseMatrix:
    """Tests for parse_matrix()."""

    def test_valid(self):
        assert parse_matrix("2,1;1,1") == Mat(2, 1, 1, 1)
        assert parse_matrix("(1, 1; 1, 2)") == Mat(1, 1, 1, 2)

    def test_bad_determinant(self):
        with pytest.raises(ParseError):
            parse_matrix("1,1;1,1")

    def test_wrong_shape(self):
        with pytest.raises(ParseError):
            parse_matrix("1,2")

    def test_not_integer(self):
        with pytest.raises(ParseError) as exc:
            parse_matrix("a,0;0,1")
        assert exc.value.token == "a"
