"""
Tests for congruence.py - congruence subgroup families and coset actions.
"""

import pytest

from farey.congruence import (
    FAMILIES,
    CongruenceSpec,
    coset_action,
    congruence_graph,
    get_family,
    index_formula,
    list_families,
    parse_congruence,
)
from farey.errors import ParseError
from farey.graphs import contains, passport
from farey.words import parse_word


class TestFamilies:
    """Tests for the family registry."""

    def test_all_families_present(self):
        assert set(FAMILIES) == {"gamma0", "gamma1", "gamma"}

    def test_get_family_case_insensitive(self):
        assert get_family("GAMMA0").name == "Gamma0"
        assert get_family("gamma_1").name == "Gamma1"

    def test_aliases(self):
        assert get_family("g0").name == "Gamma0"
        assert get_family("g").name == "Gamma"

    def test_unknown_family(self):
        with pytest.raises(ParseError):
            get_family("delta")

    def test_list_families(self):
        assert list_families() == ["Gamma0", "Gamma1", "Gamma"]


class TestParseCongruence:
    """Tests for parse_congruence()."""

    def test_gamma0(self):
        spec = parse_congruence("Gamma0(11)")
        assert spec == CongruenceSpec("Gamma0", 11)
        assert str(spec) == "Gamma0(11)"

    def test_lowercase_and_spaces(self):
        assert parse_congruence(" gamma ( 2 ) ") == CongruenceSpec("Gamma", 2)

    def test_level_must_be_positive(self):
        with pytest.raises(ParseError):
            parse_congruence("Gamma0(0)")

    def test_malformed(self):
        with pytest.raises(ParseError):
            parse_congruence("Gamma0 11")

    def test_unknown_family(self):
        with pytest.raises(ParseError):
            parse_congruence("Delta(3)")

    def test_spec_rejects_bad_level(self):
        with pytest.raises(ValueError):
            CongruenceSpec("Gamma0", 0)


class TestCosetAction:
    """Tests for coset_action()."""

    def test_gamma0_2(self):
        s, l = coset_action(CongruenceSpec("Gamma0", 2))
        assert s == [1, 0, 2]
        assert l == [1, 2, 0]

    def test_level_one_is_whole_group(self):
        for family in ("Gamma0", "Gamma1", "Gamma"):
            s, l = coset_action(CongruenceSpec(family, 1))
            assert s == [0] and l == [0]

    def test_relations_hold(self):
        s, l = coset_action(CongruenceSpec("Gamma", 5))
        d = len(s)
        assert all(s[s[i]] == i for i in range(d))
        assert all(l[l[l[i]]] == i for i in range(d))

    @pytest.mark.parametrize("text,index", [
        ("Gamma0(11)", 12),
        ("Gamma0(6)", 12),
        ("Gamma1(4)", 6),
        ("Gamma1(5)", 12),
        ("Gamma(2)", 6),
        ("Gamma(3)", 12),
        ("Gamma(4)", 24),
    ])
    def test_index(self, text, index):
        spec = parse_congruence(text)
        assert len(coset_action(spec)[0]) == index
        assert index_formula(spec) == index


class TestCongruenceGraph:
    """Tests for congruence_graph()."""

    def test_gamma0_11_genus_one(self):
        p = passport(congruence_graph(CongruenceSpec("Gamma0", 11)))
        assert p.edge_count == 12
        assert p.genus == 1
        assert p.punctures == 2

    def test_gamma2(self):
        p = passport(congruence_graph(CongruenceSpec("Gamma", 2)))
        assert p.genus == 0
        assert p.punctures == 3
        assert p.face_degrees == (2, 2, 2)
        assert p.monodromy_order == 6
        assert (p.circ_orbifolds, p.bullet_orbifolds) == (0, 0)

    def test_gamma3_is_tetrahedral(self):
        p = passport(congruence_graph(CongruenceSpec("Gamma", 3)))
        assert p.punctures == 4
        assert p.face_degrees == (3, 3, 3, 3)
        assert p.monodromy_order == 12

    def test_base_is_identity_coset(self):
        """Translation by N lies in Gamma0(N); by 1 it does not."""
        g = congruence_graph(CongruenceSpec("Gamma0", 3))
        assert contains(g, parse_word("(LS)^3"))
        assert contains(g, parse_word("LS"))
        assert not contains(g, parse_word("S"))

    def test_gamma_contains_level_translation(self):
        g = congruence_graph(CongruenceSpec("Gamma", 3))
        assert contains(g, parse_word("(LS)^3"))
        assert not contains(g, parse_word("LS"))

    @pytest.mark.parametrize("level", [4, 5, 6, 7, 8])
    def test_principal_congruence_is_regular(self, level):
        """Gamma(N) is normal: every vertex is full and the monodromy acts regularly."""
        g = congruence_graph(CongruenceSpec("Gamma", level))
        p = passport(g)
        assert not g.stubs
        assert set(p.circ_degrees) == {2}
        assert set(p.bullet_degrees) == {3}
        assert p.monodromy_order == p.edge_count == index_formula(CongruenceSpec("Gamma", level))
