"""
Tests for carks.py - çarks of hyperbolic elements and their forms.
"""

import pytest

from farey.carks import (
    M,
    P,
    Cark,
    cark_to_word,
    carks_conjugate,
    form_to_cark,
    form_to_word,
    fundamental_automorph,
    is_reciprocal,
    parse_cark,
    reciprocal_conjugator,
    word_to_cark,
    word_to_form,
)
from farey.errors import NotHyperbolic, NotPrimitive, ParseError
from farey.forms import QuadForm, act
from farey.words import IDENTITY, S, Word, invert, parse_word, word_to_matrix


class TestCark:
    """Tests for the Cark value type."""

    def test_least_rotation(self):
        assert Cark((M, P)).spine == (P, M)
        assert Cark((M, P, P)).spine == (P, P, M)

    def test_multiplicity(self):
        c = Cark((P, M, P, M))
        assert c.multiplicity == 2
        assert c.root == (P, M)
        assert str(c) == "PM^2"
        assert len(c) == 4

    def test_primitive_str(self):
        assert str(Cark((P, P, M))) == "PPM"

    def test_needs_both_blocks(self):
        with pytest.raises(ValueError):
            Cark((P, P))

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            Cark(())


class TestParseCark:
    """Tests for parse_cark()."""

    def test_lowercase(self):
        assert parse_cark("ppm") == Cark((P, P, M))

    def test_power(self):
        assert parse_cark("PM^2") == Cark((P, M, P, M))

    def test_bad_letter(self):
        with pytest.raises(ParseError) as exc:
            parse_cark("PX")
        assert exc.value.token == "X"

    def test_single_block_type(self):
        with pytest.raises(ParseError):
            parse_cark("PP")


class TestWordToCark:
    """Tests for word_to_cark() and cark_to_word()."""

    def test_blocks(self):
        assert word_to_cark(parse_word("LSLLS")) == Cark((P, M))
        assert word_to_cark(parse_word("LSLSLLS")) == Cark((P, P, M))

    def test_conjugates_share_cark(self):
        w = parse_word("LSLSLLS")
        g = parse_word("SL")
        assert word_to_cark(g * w * invert(g)) == word_to_cark(w)

    def test_power_multiplicity(self):
        c = word_to_cark(parse_word("(LSLLS)^3"))
        assert c.multiplicity == 3
        assert c.root == (P, M)

    def test_cark_to_word(self):
        assert cark_to_word(Cark((P, M))) == parse_word("LSLLS")
        assert cark_to_word(Cark((P, P, M))) == parse_word("LSLSLLS")

    def test_round_trip(self):
        for text in ("PM", "PPM", "PMM", "PPMM", "PMPPM"):
            c = parse_cark(text)
            assert word_to_cark(cark_to_word(c)) == c

    @pytest.mark.parametrize("text", ["1", "S", "L", "LS", "SLS"])
    def test_not_hyperbolic(self, text):
        with pytest.raises(NotHyperbolic):
            word_to_cark(parse_word(text))

    def test_conjugate(self):
        a = word_to_cark(parse_word("LSLLS"))
        b = word_to_cark(parse_word("LLSLS"))
        assert carks_conjugate(a, b)
        assert not carks_conjugate(a, Cark((P, P, M)))


class TestReciprocity:
    """Tests for is_reciprocal() and reciprocal_conjugator()."""

    def test_is_reciprocal(self):
        assert is_reciprocal(Cark((P, M)))
        assert not is_reciprocal(Cark((P, P, M)))
        assert is_reciprocal(Cark((P, P, M, M)))

    def test_conjugator_for_pm(self):
        w = parse_word("LSLLS")
        z = reciprocal_conjugator(w)
        assert z == Word((S,))
        assert z * w * invert(z) == invert(w)

    def test_conjugator_for_ppmm(self):
        w = cark_to_word(Cark((P, P, M, M)))
        z = reciprocal_conjugator(w)
        assert z is not None
        assert (z * z).is_identity
        assert z * w * invert(z) == invert(w)

    def test_conjugated_word(self):
        g = parse_word("LS")
        w = g * parse_word("LSLLS") * invert(g)
        z = reciprocal_conjugator(w)
        assert (z * z).is_identity
        assert z * w * invert(z) == invert(w)

    def test_not_reciprocal(self):
        assert reciprocal_conjugator(cark_to_word(Cark((P, P, M)))) is None

    def test_rejects_parabolic(self):
        with pytest.raises(NotHyperbolic):
            reciprocal_conjugator(parse_word("LS"))


class TestForms:
    """Tests for word_to_form(), form_to_word() and fundamental_automorph()."""

    def test_word_to_form(self):
        assert word_to_form(parse_word("LLSLS")) == QuadForm(1, 1, -1)
        assert word_to_form(parse_word("LSLLS")) == QuadForm(1, -1, -1)

    def test_form_is_invariant(self):
        w = parse_word("LSLSLLS")
        f = word_to_form(w)
        assert act(word_to_matrix(w), f) == f

    def test_word_to_form_rejects_identity(self):
        with pytest.raises(NotHyperbolic):
            word_to_form(IDENTITY)

    def test_fundamental_automorph(self):
        assert str(fundamental_automorph(QuadForm(1, 0, -2))) == "3,4;2,3"

    def test_automorph_fixes_form(self):
        f = QuadForm(2, 3, -1)
        assert act(fundamental_automorph(f), f) == f

    def test_form_to_word(self):
        assert form_to_word(QuadForm(1, 1, -1)) == parse_word("LLSLS")

    def test_form_word_form(self):
        for f in (QuadForm(1, 1, -1), QuadForm(1, 0, -2), QuadForm(2, 3, -1), QuadForm(-1, 2, 2)):
            assert word_to_form(form_to_word(f)) == f

    def test_form_to_cark(self):
        assert form_to_cark(QuadForm(1, 1, -1)) == Cark((P, M))

    def test_rejects_imprimitive(self):
        with pytest.raises(NotPrimitive):
            form_to_word(QuadForm(2, 2, -2))
