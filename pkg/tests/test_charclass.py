from math import comb

import numpy as np
import pytest

from slaglab.charclass import (
    Bounds,
    DoesNotBound,
    Product,
    Reverse,
    Undecided,
    euler_embedding_obstruction,
    is_nullcobordant,
    lagrangian_immersion_obstructions,
    parse_manifold_expr,
    pontrjagin_numbers,
    sw_numbers,
    total_sw_class,
)
from slaglab.charclass.numbers import monomial_name, partitions
from slaglab.errors import DimensionMismatch, NonOrientable, NoRingModel, ParseError, UnknownAtom, Unsupported

CATALOG = ["S(2)", "S(4)", "T(3)", "T(4)", "RP(3)", "RP(7)", "CP(2)", "CP(3)", "CP(4)", "SU(3)", "SigmaD(1)",
           "SigmaD(3)", "SigmaD(4)", "Wu", "Point"]


# -- parser ---------------------------------------------------------------

def test_parse_product_dimension():
    e = parse_manifold_expr("RP(3) * S(1)")
    assert isinstance(e, Product)
    assert e.dim == 4


def test_parse_whitespace_insensitive():
    assert parse_manifold_expr("RP(3)*S(1)") == parse_manifold_expr("  RP ( 3 )\t*  S(1) ")


def test_parse_union_of_unequal_dimensions():
    with pytest.raises(DimensionMismatch):
        parse_manifold_expr("SU(3) + -(Wu)")


def test_parse_negative_parameter():
    with pytest.raises(ParseError) as info:
        parse_manifold_expr("CP(-1)")
    assert info.value.position == 3


def test_parse_zero_parameter():
    with pytest.raises(ParseError):
        parse_manifold_expr("S(0)")


def test_unknown_atom_reports_offset():
    with pytest.raises(UnknownAtom) as info:
        parse_manifold_expr("S(2) * Klein(2)")
    assert info.value.position == 7
    assert info.value.caret().splitlines()[1] == " " * 7 + "^"


def test_parse_errors_carry_expected_tokens():
    with pytest.raises(ParseError) as info:
        parse_manifold_expr("S(2) *")
    assert info.value.position == 6
    assert info.value.expected
    with pytest.raises(ParseError):
        parse_manifold_expr("S(2) S(2)")
    with pytest.raises(ParseError):
        parse_manifold_expr("(S(2)")


def test_reversal_and_grouping():
    e = parse_manifold_expr("-(CP(2) * S(1)) + CP(2) * S(1)")
    assert e.dim == 5
    assert isinstance(parse_manifold_expr("--CP(2)"), Reverse)


def test_byte_offsets_after_multibyte_whitespace():
    # U+3000 is whitespace of three bytes in UTF-8
    with pytest.raises(UnknownAtom) as info:
        parse_manifold_expr("　Foo")
    assert info.value.position == 3


# -- total classes --------------------------------------------------------

def test_sw_class_rp2():
    assert str(total_sw_class("RP(2)")) == "1 + a + a^2"


def test_sw_class_rp3_trivial():
    assert total_sw_class("RP(3)").is_one


def test_sw_class_torus_trivial():
    assert total_sw_class("T(5)").is_one


def test_sw_class_needs_ring_model():
    with pytest.raises(NoRingModel):
        total_sw_class("Wu")
    with pytest.raises(NoRingModel):
        sw_numbers("Wu * S(1)")


def test_sw_class_reversal_unchanged():
    assert total_sw_class("-CP(3)") == total_sw_class("CP(3)")


# -- numbers --------------------------------------------------------------

def test_wu_number():
    assert sw_numbers("Wu")["w2w3"] == 1


def test_cp2_sw_numbers():
    numbers = sw_numbers("CP(2)")
    assert numbers["w4"] == 1
    assert numbers["w2^2"] == 1


def test_sphere_sw_numbers_vanish():
    for n in range(1, 9):
        assert not any(sw_numbers(f"S({n})").values())


def test_pontrjagin_hypersurfaces():
    for d in range(1, 7):
        assert pontrjagin_numbers(f"SigmaD({d})") == {"p1": (4 - d * d) * d}


def test_pontrjagin_cp2_and_s4():
    assert pontrjagin_numbers("CP(2)") == {"p1": 3}
    assert pontrjagin_numbers("S(4)") == {"p1": 0}


def test_pontrjagin_cp4_against_binomial():
    # p = (1 + a^2)^5: p1 = 5a^2, p2 = 10a^4
    assert pontrjagin_numbers("CP(4)") == {"p1^2": 25, "p2": 10}


def test_pontrjagin_reversal_negates():
    for x in ["CP(2)", "CP(4)", "SigmaD(3)", "CP(2) * CP(2)", "CP(2) * T(4)"]:
        forward = pontrjagin_numbers(x)
        assert pontrjagin_numbers(f"-({x})") == {k: -v for k, v in forward.items()}
        assert sw_numbers(f"-({x})") == sw_numbers(x)


def test_pontrjagin_product_cp2_cp2():
    # (1 + 3a^2)(1 + 3b^2) paired with a^2 b^2
    assert pontrjagin_numbers("CP(2) * CP(2)") == {"p1^2": 18, "p2": 9}


def test_pontrjagin_unsupported_cases():
    with pytest.raises(Unsupported):
        pontrjagin_numbers("RP(4)")
    with pytest.raises(Unsupported):
        pontrjagin_numbers("RP(3) * RP(5)")
    with pytest.raises(Unsupported):
        pontrjagin_numbers("S(3)")


def _rp_product_numbers(m, k):
    """SW numbers of RP(m) x RP(k) by expanding 2-D coefficient arrays mod 2."""
    dim = m + k

    def class_array(n, which):
        arr = np.zeros((m + 1, k + 1), dtype=np.int64)
        for j in range(n + 2):
            if which == 0 and j <= m:
                arr[j, 0] = comb(n + 1, j) % 2
            if which == 1 and j <= k:
                arr[0, j] = comb(n + 1, j) % 2
        return arr

    def mul(x, y):
        out = np.zeros_like(x)
        for i, j in zip(*np.nonzero(x)):
            out[i:, j:] += x[i, j] * y[: m + 1 - i, : k + 1 - j]
        return out % 2

    w = mul(class_array(m, 0), class_array(k, 1))
    parts = {d: np.where(np.add.outer(np.arange(m + 1), np.arange(k + 1)) == d, w, 0) for d in range(dim + 1)}
    out = {}
    for part in partitions(dim):
        acc = np.zeros_like(w)
        acc[0, 0] = 1
        for d in part:
            acc = mul(acc, parts[d])
        out[monomial_name("w", part)] = int(acc[m, k])
    return out


@pytest.mark.parametrize("m,k", [(2, 1), (2, 2), (3, 2), (4, 1), (5, 3)])
def test_product_sw_numbers_match_independent_expansion(m, k):
    assert sw_numbers(f"RP({m}) * RP({k})") == _rp_product_numbers(m, k)


def test_rp2_times_circle_and_torus_times_circle():
    # RP(1) is a circle, so the independent expansion applies
    assert sw_numbers("RP(2) * S(1)") == _rp_product_numbers(2, 1)
    assert not any(sw_numbers("RP(2) * S(1)").values())
    assert not any(sw_numbers("T(2) * S(1)").values())


def test_rp_single_sw_numbers_are_binomial_products():
    for n in range(1, 9):
        numbers = sw_numbers(f"RP({n})")
        for part in partitions(n):
            expected = 1
            for i in part:
                expected *= comb(n + 1, i)
            assert numbers[monomial_name("w", part)] == expected % 2


# -- cobordism ------------------------------------------------------------

def test_wu_does_not_bound():
    assert is_nullcobordant("Wu") == DoesNotBound("w2w3", 1)


def test_su3_bounds():
    assert isinstance(is_nullcobordant("SU(3)"), Bounds)


def test_cp2_does_not_bound_by_p1():
    assert is_nullcobordant("CP(2)") == DoesNotBound("p1", 3)


@pytest.mark.parametrize("x", [x for x in CATALOG if x not in ("RP(3)", "RP(7)")] + ["CP(2) * T(2)"])
def test_union_with_reverse_bounds(x):
    assert isinstance(is_nullcobordant(f"{x} + -({x})"), Bounds)


def test_nullcobordism_requires_orientable():
    with pytest.raises(NonOrientable):
        is_nullcobordant("RP(2)")


def test_undecided_when_data_missing():
    verdict = is_nullcobordant("Wu * CP(2)")
    assert isinstance(verdict, Undecided)
    assert verdict.missing


def test_bounding_factor_settles_torsion_products():
    assert isinstance(is_nullcobordant("RP(3) * S(1)"), Bounds)


def test_point_does_not_bound():
    assert is_nullcobordant("Point") == DoesNotBound("1", 1)
    assert isinstance(is_nullcobordant("Point + -Point"), Bounds)


# -- immersion and embedding obstructions ---------------------------------

def test_rp4_obstructed_by_sw_square():
    report = lagrangian_immersion_obstructions("RP(4)")
    assert report.verdict == "Obstructed"
    assert report.sw_square_ok is False


def test_cp2_obstructed_by_pontrjagin():
    report = lagrangian_immersion_obstructions("CP(2)")
    assert report.verdict == "Obstructed"
    assert report.pontrjagin_trivial_ok is False


def test_sigma2_passes():
    report = lagrangian_immersion_obstructions("SigmaD(2)")
    assert report.verdict == "NecessaryConditionsPass"
    assert report.sw_square_ok and report.pontrjagin_trivial_ok


def test_rp_square_criterion_exhaustive():
    for n in range(1, 17):
        # w(RP^n)^2 = (1 + a^2)^(n+1) truncated at a^(n+1)
        direct = all(comb(n + 1, k) % 2 == 0 for k in range(1, n // 2 + 1))
        report = lagrangian_immersion_obstructions(f"RP({n})")
        assert report.sw_square_ok == direct
        assert (report.verdict != "Obstructed") == (n in (1, 3, 7, 15))


def test_stably_parallelizable_claims_existence():
    assert lagrangian_immersion_obstructions("S(3) * T(2)").verdict == "ImmersionExists"


def test_wu_immersion_undecided():
    assert lagrangian_immersion_obstructions("Wu").verdict == "Undecided"


def test_euler_obstruction():
    torus = euler_embedding_obstruction("T(2)")
    assert (torus.chi, torus.embedding_possible) == (0, True)
    sphere = euler_embedding_obstruction("S(2)")
    assert (sphere.chi, sphere.embedding_possible) == (2, False)
    s3 = euler_embedding_obstruction("S(3)")
    assert s3.embedding_possible and any("exact" in note for note in s3.notes)


def test_euler_multiplicative_and_additive():
    assert euler_embedding_obstruction("S(2) * CP(2)").chi == 6
    assert euler_embedding_obstruction("S(2) + S(2) + T(2)").chi == 4
    assert euler_embedding_obstruction("SigmaD(4)").chi == 24
