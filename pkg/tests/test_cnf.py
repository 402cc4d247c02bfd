"""CNF encoding, DIMACS format, model decoding, and the toy DPLL."""

import io
from math import comb

import pytest

from biramsey.cnf import (
    EncodingIntegrityError,
    decode_model,
    dpll,
    encode_cnf,
    graph_from_model,
    model_from_graph,
    satisfies,
    solve_with_toy_dpll,
    write_dimacs,
)
from biramsey.core import BipartiteGraph, UsageError
from biramsey.search import ARROWS, NOT_ARROWS, ArrowingInstance, arrows
from biramsey.witnesses import witness_8x29

from oracles import arrows_oracle


class TestCounts:
    def test_3x3_t2(self):
        cnf = encode_cnf(ArrowingInstance(3, 3, 2))
        assert cnf.num_vars == 9
        assert cnf.num_clauses == 9 + 9

    def test_7x30_t5(self):
        cnf = encode_cnf(ArrowingInstance(7, 30, 5))
        assert cnf.num_vars == 210
        assert cnf.num_clauses == 21 * 435 + 21 * 142506

    def test_clause_stream_matches_count(self):
        cnf = encode_cnf(ArrowingInstance(3, 4, 2))
        clauses = list(cnf.clauses())
        assert len(clauses) == cnf.num_clauses
        assert len(clauses) == comb(3, 2) * comb(4, 2) * 2

    def test_t_too_large_rejected(self):
        with pytest.raises(UsageError):
            encode_cnf(ArrowingInstance(3, 3, 4))
        with pytest.raises(UsageError):
            encode_cnf(ArrowingInstance(5, 3, 4))


class TestDimacs:
    def test_exact_text_2x2_t2(self):
        cnf = encode_cnf(ArrowingInstance(2, 2, 2))
        assert list(cnf.dimacs_lines()) == [
            "p cnf 4 2",
            "-1 -2 -3 -4 0",
            "1 2 3 4 0",
        ]

    def test_lines_match_clause_stream(self):
        cnf = encode_cnf(ArrowingInstance(3, 4, 2))
        lines = list(cnf.dimacs_lines())
        assert lines[0] == f"p cnf {cnf.num_vars} {cnf.num_clauses}"
        for line, clause in zip(lines[1:], cnf.clauses()):
            assert line == " ".join(str(lit) for lit in clause) + " 0"

    def test_byte_stable(self):
        cnf = encode_cnf(ArrowingInstance(4, 5, 2))
        one = io.StringIO()
        two = io.StringIO()
        write_dimacs(cnf, one)
        write_dimacs(cnf, two)
        assert one.getvalue() == two.getvalue()
        assert one.getvalue().endswith("0\n")

    def test_write_to_path(self, tmp_path):
        target = tmp_path / "inst.cnf"
        cnf = encode_cnf(ArrowingInstance(2, 2, 2))
        write_dimacs(cnf, target)
        assert target.read_bytes() == b"p cnf 4 2\n-1 -2 -3 -4 0\n1 2 3 4 0\n"


class TestModels:
    def test_variable_indexing(self):
        cnf = encode_cnf(ArrowingInstance(3, 4, 2))
        assert cnf.var(0, 0) == 1
        assert cnf.var(1, 0) == 5
        assert cnf.var(2, 3) == 12
        with pytest.raises(UsageError):
            cnf.var(3, 0)

    def test_graph_model_roundtrip(self):
        cnf = encode_cnf(ArrowingInstance(2, 3, 2))
        g = BipartiteGraph.from_rows(2, 3, [[0, 2], [1]])
        assert graph_from_model(cnf, model_from_graph(cnf, g)) == g

    def test_all_false_model_decodes_invalid(self):
        cnf = encode_cnf(ArrowingInstance(5, 6, 5))
        cert = decode_model(cnf, (False,) * 30)
        assert not cert.valid
        with pytest.raises(EncodingIntegrityError):
            decode_model(cnf, (False,) * 30, strict=True)

    def test_wrong_model_length(self):
        cnf = encode_cnf(ArrowingInstance(2, 2, 2))
        with pytest.raises(UsageError):
            decode_model(cnf, (True,) * 3)

    def test_witness_8x29_satisfies_small_cross_section(self):
        # the full 6.6M-clause satisfaction check lives in the acceptance suite
        cnf = encode_cnf(ArrowingInstance(8, 29, 5))
        model = model_from_graph(cnf, witness_8x29())
        cert = decode_model(cnf, model, strict=True)
        assert cert.valid

    def test_satisfies_small(self):
        cnf = encode_cnf(ArrowingInstance(4, 4, 2))
        out = arrows(ArrowingInstance(4, 4, 2))
        model = model_from_graph(cnf, out.certificate.graph)
        assert satisfies(cnf, model)
        assert not satisfies(cnf, (True,) * 16)


class TestDpll:
    def test_trivial_cases(self):
        assert dpll(1, [(1,)]) == (True, (True,))
        assert dpll(1, [(-1,)]) == (True, (False,))
        assert dpll(1, [(1,), (-1,)]) == (False, None)
        assert dpll(2, [(1, 2), (-1, 2), (1, -2), (-1, -2)]) == (False, None)

    def test_unit_propagation_chain(self):
        sat, model = dpll(3, [(1,), (-1, 2), (-2, 3)])
        assert sat and model == (True, True, True)

    def test_empty_clause_unsat(self):
        assert dpll(2, [(), (1, 2)]) == (False, None)

    def test_agreement_with_search_small_sweep(self):
        for m in range(2, 5):
            for n in range(2, 5):
                cnf = encode_cnf(ArrowingInstance(m, n, 2))
                sat, cert = solve_with_toy_dpll(cnf)
                verdict = arrows(ArrowingInstance(m, n, 2)).verdict
                assert sat == (verdict == NOT_ARROWS), (m, n)
                if sat:
                    assert cert.valid

    def test_agreement_with_raw_oracle(self):
        for m, n in ((2, 3), (3, 3), (4, 4)):
            cnf = encode_cnf(ArrowingInstance(m, n, 2))
            sat, _ = solve_with_toy_dpll(cnf)
            assert sat != arrows_oracle(m, n, 2)

    def test_5x5_t2_unsat(self):
        sat, cert = solve_with_toy_dpll(encode_cnf(ArrowingInstance(5, 5, 2)))
        assert not sat and cert is None
        assert arrows(ArrowingInstance(5, 5, 2)).verdict == ARROWS

    def test_size_guard(self):
        with pytest.raises(UsageError):
            solve_with_toy_dpll(encode_cnf(ArrowingInstance(7, 30, 5)))
