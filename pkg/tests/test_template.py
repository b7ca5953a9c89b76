from math import comb

import pytest

from hypertemplate.errors import InputError
from hypertemplate.hypergraph import Hypergraph, complete_hypergraph
from hypertemplate.template import (
    TailPolicy,
    Template,
    complete_template,
    corrupt_level,
    max_extension_arity,
    random_template,
    validate,
)


def is_complete_level(h):
    return len(h.uniform_edges) == comb(h.size, h.arity)


class TestLevelAccess:
    def test_complete_template_level(self):
        t = complete_template(3, 4)
        h, f = t.level(2)
        assert h.size == 3 and f == 3 and is_complete_level(h)

    def test_tail_formula(self):
        levels = [(complete_hypergraph(3, 3), 1), (complete_hypergraph(3, 4), 2)]
        t = Template(3, levels, TailPolicy("complete_growing", 1))
        h, f = t.level(5)
        assert h.size == 4 + 4 and f == 8 and is_complete_level(h)

    def test_level_zero_is_first_stored(self):
        h0 = Hypergraph(3, 4, [(0, 1, 2)])
        t = Template(3, [(h0, 1)])
        assert t.level(0) == (h0, 1)

    def test_purity(self):
        t = complete_template(2, 2)
        assert t.level(7) == t.level(7)

    def test_tail_f_nondecreasing_unbounded(self):
        t = complete_template(3, 2)
        fs = [t.f_value(n) for n in range(2, 30)]
        assert fs == sorted(fs) and fs[-1] > 20


class TestConstruction:
    def test_f_out_of_bounds_rejected(self):
        h = complete_hypergraph(3, 3)
        with pytest.raises(InputError):
            Template(3, [(h, 4)])
        with pytest.raises(InputError):
            Template(3, [(h, 0)])

    def test_arity_mismatch_rejected(self):
        with pytest.raises(InputError):
            Template(3, [(complete_hypergraph(2, 3), 1)])

    def test_needs_a_level(self):
        with pytest.raises(InputError):
            Template(3, [])

    def test_bad_tail_kind(self):
        with pytest.raises(InputError):
            TailPolicy("linear", 1)
        with pytest.raises(InputError):
            TailPolicy("repeat_last_complete", 2)

    def test_pickle_roundtrip(self):
        import pickle

        t = complete_template(3, 3)
        assert pickle.loads(pickle.dumps(t)) == t


class TestValidate:
    def test_complete_valid_depth_6(self):
        rep = validate(complete_template(3, 4), 6)
        assert rep.valid and rep.exhaustive

    def test_extension_failure_reported(self):
        h = Hypergraph(3, 4)  # empty uniform part cannot support t = 2
        t = Template(3, [(h, 2)])
        rep = validate(t, 1)
        assert not rep.valid
        assert rep.problems[0].level == 0
        assert rep.problems[0].condition == "extension"

    def test_repetition_only_level_f1_is_valid(self):
        # t = 1 always has a witness via repetition edges
        t = Template(3, [(Hypergraph(3, 3), 1)])
        assert validate(t, 1).valid

    def test_corrupted_template_fails(self):
        t = random_template(3, [4, 4], 0.9, [2, 2], seed=0)
        assert validate(t, 2).valid
        bad = corrupt_level(t, 1)
        assert not validate(bad, 2).valid


class TestMaxExtensionArity:
    def test_complete_reaches_cap(self):
        h = complete_hypergraph(3, 5)
        assert max_extension_arity(h, 5) == 5

    def test_boundary_consistency(self):
        h = Hypergraph(3, 4, [(0, 1, 2), (0, 1, 3), (0, 2, 3)])
        r = max_extension_arity(h, 4)
        assert h.has_extension_property(r)
        if r < 4:
            assert not h.has_extension_property(r + 1)


class TestRandomTemplate:
    def test_edge_prob_one_gives_complete_levels(self):
        t = random_template(3, [4, 5], 1.0, [3, 4], seed=0)
        assert all(is_complete_level(h) for h, _ in t.levels)
        assert [f for _, f in t.levels] == [3, 4]

    def test_seed_reproducible(self):
        a = random_template(3, [5, 5], 0.8, [2, 2], seed=3)
        b = random_template(3, [5, 5], 0.8, [2, 2], seed=3)
        assert a == b

    def test_generated_templates_validate(self):
        for seed in range(8):
            t = random_template(3, [4, 4, 4], 0.85, [1, 2, 2], seed=seed)
            assert validate(t, 3).valid

    def test_spec_shape_k3_size8(self):
        t = random_template(3, [8, 8], 0.9, [2, 2], seed=1)
        assert validate(t, 2).valid

    def test_size_below_arity_rejected(self):
        with pytest.raises(InputError):
            random_template(3, [2], 0.5, [1], seed=0)

    def test_degrades_f_when_retries_run_out(self):
        # a near-empty level cannot support t = 3, but t = 1 always holds
        # via repetition edges, so generation degrades instead of failing
        t = random_template(2, [6], 1e-9, [3], seed=0, retry_budget=2)
        assert t.f_value(0) < 3 and validate(t, 1).valid


class TestStabilizationLevel:
    def test_prefix_walk(self):
        levels = []
        for f, size in zip((1, 1, 2, 2, 3, 3), (4, 4, 4, 4, 4, 4)):
            levels.append((complete_hypergraph(3, size), f))
        t = Template(3, levels, TailPolicy("complete_growing", 1))
        assert t.stabilization_level(3) == 4

    def test_complete_template_formula(self):
        t = complete_template(3, 2)
        for count in range(1, 8):
            assert t.stabilization_level(count) == count - 1

    def test_count_one_is_zero(self):
        t = random_template(3, [4, 4], 0.8, [1, 1], seed=2)
        assert t.stabilization_level(1) == 0

    def test_definition_holds(self):
        t = Template(
            3,
            [(complete_hypergraph(3, 5), 3), (complete_hypergraph(3, 4), 1)],
            TailPolicy("complete_growing", 2),
        )
        for count in range(1, 12):
            n = t.stabilization_level(count)
            assert all(t.f_value(m) >= count for m in range(n, n + 20))
            if n > 0:
                assert t.f_value(n - 1) < count
