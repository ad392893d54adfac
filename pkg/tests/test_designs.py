import pytest

from mcwc import corpus
from mcwc.core import (
    CodeParameters,
    DomainError,
    FormatError,
    ShapeError,
)
from mcwc.designs import (
    sas_as_hsas,
    GddDesign,
    SkewSquare,
    SquareKind,
    bfc_fill,
    fill_hole,
    format_gdd,
    format_square,
    mcwc_to_square,
    parse_gdd,
    parse_square,
    sfs_type_key,
    square_to_mcwc,
    transversal_design,
    verify_gdd,
    verify_square,
    wfc_construct,
)

SAS55_CELLS = {
    (0, 1): {0, 1},
    (2, 3): {0, 2},
    (2, 4): {1, 3},
    (0, 4): {2, 4},
    (1, 3): {3, 4},
}


@pytest.fixture
def sas55():
    return SkewSquare.build("sas", 5, 5, SAS55_CELLS)


class TestVerifySquare:
    def test_sas55_valid(self, sas55):
        assert verify_square(sas55).valid

    def test_empty_sas_invalid(self):
        sq = SkewSquare.build("sas", 3, 5, {})
        report = verify_square(sq)
        assert not report.valid and "row/column 0" in report.violation

    def test_duplicate_pair(self, sas55):
        cells = dict(SAS55_CELLS)
        cells[(3, 0)] = {0, 1}
        report = verify_square(SkewSquare.build("sas", 5, 5, cells))
        assert not report.valid and "pair" in report.violation

    def test_skewness(self):
        cells = {(0, 1): {0, 1}, (1, 0): {2, 3}}
        report = verify_square(SkewSquare.build("sas", 5, 5, cells))
        assert not report.valid and "skew" in report.violation.lower()

    def test_diagonal(self):
        report = verify_square(SkewSquare.build("sas", 3, 3, {(1, 1): {0, 1}}))
        assert not report.valid and "diagonal" in report.violation

    def test_sas_star_with_two_deficient_rows(self):
        # removing a cell from a valid star square breaks the unique-deficiency rule
        star = mcwc_to_square(corpus.small_code(7, 7))
        cells = dict(star.cells)
        cells.pop(next(iter(cells)))
        report = verify_square(SkewSquare.build("sas*", star.s, star.v, cells))
        assert not report.valid

    def test_hsas_requires_hole(self):
        report = verify_square(SkewSquare.build("hsas", 3, 3, {}))
        assert not report.valid and "hole" in report.violation

    def test_hsas_pair_inside_point_hole(self):
        h = corpus.hsas_square(11, 3, 11)
        cells = dict(h.cells)
        cells[(0, 9)] = {8, 9}  # both inside W = {8, 9, 10}
        bad = SkewSquare.build(
            "hsas", 11, 11, cells, hole_rows=h.hole_rows, hole_points=h.hole_points
        )
        assert not verify_square(bad).valid

    def test_sfs_partition_metadata(self):
        sq = SkewSquare.build("sfs", 4, 4, {}, row_parts=[(0, 1)], point_parts=[(0, 1), (2, 3)])
        report = verify_square(sq)
        assert not report.valid and "partition" in report.violation


class TestSquareCodeTranslation:
    def test_sas55_to_code_matches_table(self, sas55):
        code = square_to_mcwc(sas55)
        assert code.params == CodeParameters((5, 5), (2, 2), 6)
        assert code.support_set() == corpus.small_code(5, 5).support_set()

    def test_sas_star_33(self):
        star = SkewSquare.build("sas*", 3, 3, {(0, 1): {0, 1}})
        code = square_to_mcwc(star)
        assert [w.support for w in code.words] == [(0, 1, 3, 4)]

    def test_table_roundtrips(self):
        for n1, n2 in corpus.SMALL_PAIRS:
            if (n1, n2) == (5, 7):
                continue  # not extremal, no square exists
            code = corpus.small_code(n1, n2)
            sq = mcwc_to_square(code)
            expected_kind = SquareKind.SAS if n1 % 4 == 1 else SquareKind.SAS_STAR
            assert sq.kind is expected_kind
            assert square_to_mcwc(sq).support_set() == code.support_set()

    def test_cell_count_identity(self):
        for n1, n2 in [(5, 5), (5, 9), (9, 17)]:
            sq = mcwc_to_square(corpus.small_code(n1, n2))
            assert sq.num_cells == (n2 * (n1 - 1)) // 4

    def test_non_extremal_rejected(self):
        with pytest.raises(DomainError):
            mcwc_to_square(corpus.small_code(5, 7))

    def test_wrong_kind_rejected(self, sas55):
        sq = corpus.sfs_square(5, 0)
        with pytest.raises(ShapeError):
            square_to_mcwc(sq)


class TestGdd:
    TD32 = GddDesign.build(
        6, [(0, 1), (2, 3), (4, 5)], [(0, 2, 4), (0, 3, 5), (1, 2, 5), (1, 3, 4)]
    )

    def test_td32_valid(self):
        assert verify_gdd(self.TD32, {3}).valid

    def test_pair_covered_twice(self):
        bad = GddDesign.build(
            6,
            [(0, 1), (2, 3), (4, 5)],
            [(0, 2, 4), (0, 2, 5), (1, 3, 5), (1, 3, 4)],
        )
        report = verify_gdd(bad)
        assert not report.valid and "twice" in report.violation

    def test_block_inside_group(self):
        bad = GddDesign.build(4, [(0, 1), (2, 3)], [(0, 1)])
        report = verify_gdd(bad)
        assert not report.valid and "group" in report.violation

    @pytest.mark.parametrize("k,q", [(3, 2), (4, 3), (5, 4), (5, 5), (9, 8), (9, 9)])
    def test_transversal_designs(self, k, q):
        td = transversal_design(k, q)
        assert verify_gdd(td, {k}).valid
        assert len(td.blocks) == q * q

    def test_file_roundtrip(self):
        text = format_gdd(self.TD32)
        assert format_gdd(parse_gdd(text)) == text


class TestFrameConstructions:
    def test_wfc_type_16_8(self):
        td = transversal_design(5, 4)
        ingredient = corpus.sfs_square(5, 5)
        key = sfs_type_key([(4, 2)] * 5)
        frame = wfc_construct(
            td, {x: 4 for x in range(20)}, {x: 2 for x in range(20)}, {key: ingredient}
        )
        assert frame.sfs_type() == sfs_type_key([(16, 8)] * 5)
        assert frame.num_cells == 16 * ingredient.num_cells

    def test_wfc_trivial_gdd_relabels(self):
        ingredient = corpus.sfs_square(5, 5)
        gdd = GddDesign.build(5, [(i,) for i in range(5)], [tuple(range(5))])
        frame = wfc_construct(
            gdd, {x: 4 for x in range(5)}, {x: 2 for x in range(5)},
            {sfs_type_key([(4, 2)] * 5): ingredient},
        )
        assert frame.num_cells == ingredient.num_cells
        assert frame.sfs_type() == sfs_type_key([(4, 2)] * 5)

    def test_wfc_mixed_weights(self):
        td = transversal_design(5, 4)
        ingredients = {
            sfs_type_key([(4, 2)] * a + [(2, 2)] * (5 - a)): corpus.sfs_square(5, a)
            for a in range(6)
        }
        s_weight = {x: 4 if x % 2 == 0 else 2 for x in range(20)}
        frame = wfc_construct(td, s_weight, {x: 2 for x in range(20)}, ingredients)
        assert frame.sfs_type() == sfs_type_key([(12, 8)] * 5)

    def test_wfc_missing_ingredient(self):
        td = transversal_design(5, 4)
        from mcwc.core import IngredientError

        with pytest.raises(IngredientError):
            wfc_construct(td, {x: 4 for x in range(20)}, {x: 2 for x in range(20)}, {})

    def test_fill_hole_builds_star_squares(self):
        star3 = mcwc_to_square(corpus.small_code(3, 3))
        for n2 in (11, 13, 15, 17, 19):
            result = fill_hole(corpus.hsas_square(11, 3, n2), star3)
            assert result.kind is SquareKind.SAS_STAR
            code = square_to_mcwc(result)
            assert len(code) == (n2 * 10) // 4

    def test_fill_hole_shape_mismatch(self):
        star3 = mcwc_to_square(corpus.small_code(3, 3))
        with pytest.raises(ShapeError):
            fill_hole(corpus.hsas_square(11, 5, 21), star3)

    def test_bfc_degenerate_single_hole(self):
        sas55 = mcwc_to_square(corpus.small_code(5, 5))
        frame = SkewSquare.build(
            "sfs", 4, 4, {}, row_parts=[(0, 1, 2, 3)], point_parts=[(0, 1, 2, 3)]
        )
        out = bfc_fill(frame, 1, 1, [sas55])
        assert out.kind is SquareKind.SAS and out.num_cells == sas55.num_cells

    def test_bfc_full_assembly(self):
        td = transversal_design(5, 4)
        frame = wfc_construct(
            td,
            {x: 4 for x in range(20)},
            {x: 2 for x in range(20)},
            {sfs_type_key([(4, 2)] * 5): corpus.sfs_square(5, 5)},
        )
        h19 = corpus.hsas_square(11, 3, 19)
        star19 = fill_hole(h19, mcwc_to_square(corpus.small_code(3, 3)))
        result = bfc_fill(frame, 3, 3, [h19, h19, h19, h19, star19])
        assert result.kind is SquareKind.SAS_STAR
        assert (result.s, result.v) == (83, 43)
        code = square_to_mcwc(result)
        assert len(code) == (83 * 42) // 4 == 871

    def test_bfc_hsas_variant(self):
        # all fillers holey: the assembled square keeps a hole
        td = transversal_design(5, 4)
        frame = wfc_construct(
            td,
            {x: 4 for x in range(20)},
            {x: 2 for x in range(20)},
            {sfs_type_key([(4, 2)] * 5): corpus.sfs_square(5, 5)},
        )
        h19 = corpus.hsas_square(11, 3, 19)
        result = bfc_fill(frame, 3, 3, [h19] * 5)
        assert result.kind is SquareKind.HSAS
        assert sorted(result.hole_rows) == [80, 81, 82]
        # filling its hole afterwards matches the one-shot star construction
        star = fill_hole(result, mcwc_to_square(corpus.small_code(3, 3)))
        assert verify_square(star).valid and star.num_cells == 871

    def test_bfc_plain_variant_one_new_row(self):
        # pad with a single new row/column/point, plain squares as fillers
        td = transversal_design(5, 4)
        frame = wfc_construct(
            td,
            {x: 4 for x in range(20)},
            {x: 2 for x in range(20)},
            {sfs_type_key([(4, 2)] * 5): corpus.sfs_square(5, 5)},
        )
        sas17_9 = mcwc_to_square(corpus.small_code(9, 17))
        holey = sas_as_hsas(sas17_9, 0)
        result = bfc_fill(frame, 1, 1, [holey] * 4 + [sas17_9])
        assert result.kind is SquareKind.SAS
        assert (result.s, result.v) == (81, 41)
        code = square_to_mcwc(result)
        assert len(code) == (81 * 40) // 4 == 810

    def test_sas_as_hsas_requires_plain(self):
        with pytest.raises(ShapeError):
            sas_as_hsas(mcwc_to_square(corpus.small_code(3, 3)), 0)

    def test_bfc_filler_count_mismatch(self):
        frame = corpus.sfs_square(5, 5)
        with pytest.raises(ShapeError):
            bfc_fill(frame, 3, 3, [corpus.hsas_square(11, 3, 11)])


class TestSquareFiles:
    def test_roundtrip_all_kinds(self):
        squares = [
            mcwc_to_square(corpus.small_code(5, 5)),
            mcwc_to_square(corpus.small_code(3, 3)),
            corpus.hsas_square(11, 3, 13),
            corpus.sfs_square(5, 2),
        ]
        for sq in squares:
            text = format_square(sq)
            again = parse_square(text)
            assert format_square(again) == text
            assert verify_square(again).valid

    @pytest.mark.parametrize(
        "text,fragment",
        [
            ("", "empty"),
            ("square what 3 3\n", "kind"),
            ("square sas 3 3\ncell 0 1 0\n", "cell"),
            ("square sas 3 3\ncell 0 1 0 1\ncell 0 1 1 2\n", "twice"),
            ("square sas 3 3\nrows 1 2\n", "directive"),
        ],
    )
    def test_parse_errors(self, text, fragment):
        with pytest.raises(FormatError) as exc:
            parse_square(text)
        assert fragment in str(exc.value)
