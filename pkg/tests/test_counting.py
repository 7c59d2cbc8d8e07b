"""Count systems, compositions, parsing, and their error paths."""
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from truecount import (
    EmptyClassError,
    EmptyDeckError,
    ParseError,
    UnbalancedSystemError,
    UnknownSystemError,
    builtin_systems,
    composition,
    format_composition,
    fresh_shoe,
    get_system,
    make_count_system,
    parse_composition,
    parse_system_file,
    true_count,
)
from truecount.counting import InvalidMultiplicityError, as_weight


class TestCountSystem:
    def test_hi_lo_weight_classes(self, hi_lo):
        assert hi_lo.weight_multiplicities() == {
            Fraction(-1): 20,
            Fraction(0): 12,
            Fraction(1): 20,
        }

    def test_every_builtin_is_balanced(self):
        for system in builtin_systems():
            total = sum(
                w * m
                for w, m in system.weight_multiplicities().items()
            )
            assert total == 0, system.name

    def test_builtin_multiplicities_total_52(self):
        for system in builtin_systems():
            assert sum(system.weight_multiplicities().values()) == 52

    def test_sigma0_hi_lo_exact_square(self, hi_lo):
        assert hi_lo.sigma0_squared() == Fraction(40, 52)

    def test_get_system_case_insensitive(self):
        assert get_system("Hi-Lo").name == "hi-lo"

    def test_get_system_unknown(self):
        with pytest.raises(UnknownSystemError):
            get_system("nope")

    def test_unbalanced_rejected(self):
        weights = {r: 0 for r in "A23456789"} | {"T": 1}
        with pytest.raises(UnbalancedSystemError):
            make_count_system("bad", weights)

    def test_wrong_rank_set_rejected(self):
        with pytest.raises(InvalidMultiplicityError):
            make_count_system("bad", {"A": 1, "2": -1})

    def test_non_half_integer_weight_rejected(self):
        weights = {r: 0 for r in "A23456789"} | {"T": 0}
        weights["2"] = "1/3"
        weights["3"] = "-1/3"
        with pytest.raises(ParseError):
            make_count_system("bad", weights)

    def test_full_13_rank_layout(self):
        weights = {r: 0 for r in ("A", "2", "3", "4", "5", "6", "7", "8", "9")}
        weights |= {"T": 1, "J": 1, "Q": -1, "K": -1}
        system = make_count_system("custom13", weights)
        assert system.rank_multiplicity["T"] == 4

    def test_halves_uses_exact_fractions(self):
        halves = get_system("halves")
        assert halves.weights["2"] == Fraction(1, 2)
        assert halves.weights["5"] == Fraction(3, 2)


class TestComposition:
    def test_total_and_running_count(self):
        comp = composition({1: 5, -1: 3, 0: 2})
        assert comp.total == 10
        # Reveal convention: R = -sum(w * remaining) = -(5 - 3) = -2.
        assert comp.running_count == -2

    def test_fresh_shoe_running_count_zero(self, hi_lo):
        shoe = fresh_shoe(hi_lo, 8)
        assert shoe.total == 416
        assert shoe.running_count == 0

    def test_deplete_updates_running_count(self, hi_lo):
        shoe = fresh_shoe(hi_lo, 1)
        after = shoe.deplete([1, 1, -1])
        assert after.total == 49
        assert after.running_count == 1

    def test_deplete_exhausted_class(self):
        comp = composition({1: 1, -1: 1})
        with pytest.raises(EmptyClassError):
            comp.deplete([1, 1])

    def test_negative_count_rejected(self):
        with pytest.raises(EmptyClassError):
            composition({1: -1})

    def test_true_count_units(self):
        comp = composition({1: 4, -1: 5, 0: 3})
        assert comp.true_count("card") == Fraction(1, 12)
        assert comp.true_count("deck") == Fraction(52, 12)

    def test_true_count_empty_deck(self):
        with pytest.raises(EmptyDeckError):
            true_count(composition({1: 0}))

    def test_true_count_bad_units(self):
        with pytest.raises(ParseError):
            composition({1: 1}).true_count("shoe")


class TestParsing:
    def test_parse_composition(self):
        comp = parse_composition("+1:5,-1:5,0:3")
        assert comp.counts == {
            Fraction(1): 5,
            Fraction(-1): 5,
            Fraction(0): 3,
        }

    def test_parse_composition_merges_duplicates(self):
        assert parse_composition("1:2,1:3").counts == {Fraction(1): 5}

    @pytest.mark.parametrize("spec", ["", "1", "1:x", "1:-2", "::"])
    def test_parse_composition_rejects(self, spec):
        with pytest.raises(ParseError):
            parse_composition(spec)

    def test_format_roundtrip(self):
        comp = parse_composition("+1:5,-1:5,0:3")
        assert parse_composition(format_composition(comp)) == comp

    def test_format_fractional_weight(self):
        comp = composition({Fraction(3, 2): 4, Fraction(-3, 2): 4})
        assert "1.5" in format_composition(comp)

    def test_as_weight_coercions(self):
        assert as_weight(1.5) == Fraction(3, 2)
        assert as_weight("-1/2") == Fraction(-1, 2)
        with pytest.raises(ParseError):
            as_weight("abc")
        with pytest.raises(ParseError):
            as_weight(object())

    def test_parse_system_file(self):
        text = """
        # custom system
        A -1
        2 0.5
        3 1
        4 1
        5 1.5
        6 1
        7 0.5
        8 0
        9 -0.5
        10 -1
        """
        system = parse_system_file(text, name="halves-copy")
        assert system.weights == get_system("halves").weights

    def test_parse_system_file_duplicate_rank(self):
        with pytest.raises(ParseError, match="line 3"):
            parse_system_file("A 1\n2 0\nA -1\n")

    def test_parse_system_file_bad_weight(self):
        with pytest.raises(ParseError, match="line 1"):
            parse_system_file("A one\n")


@given(
    counts=st.dictionaries(
        st.sampled_from([Fraction(-2), Fraction(-1), Fraction(0), Fraction(1)]),
        st.integers(min_value=0, max_value=12),
        min_size=1,
    )
)
def test_running_count_matches_definition(counts):
    comp = composition(counts)
    assert comp.running_count == -sum(w * l for w, l in counts.items())
    assert comp.total == sum(counts.values())
