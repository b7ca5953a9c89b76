"""Decide positive types and qf formulas; watch the level transfer hold.

Run:  python3 demos/02_decision_procedures.py
"""

from hypertemplate import (
    Hypergraph,
    PositiveTypeSpec,
    QfFormulaSpec,
    TailPolicy,
    Template,
    brute_force_positive_type,
    corrupt_level,
    decide_positive_type,
    decide_qf_formula,
    m_star,
    random_template,
    transfer_check,
)

# A template whose level 0 has no uniform edges: the only level-0 edges
# come from repeated entries, which constrains witnesses sharply.
t = Template(3, [(Hypergraph(3, 4), 1)], TailPolicy("complete_growing", 1))

# One positive constraint R(x, a, b) with a, b on distinct level-0 stems:
# the witness must repeat one of the two level-0 values.
spec = PositiveTypeSpec(params=(((0,), (1,)),))
dec = decide_positive_type(t, spec, check_depth=2)
print("single constraint:", dec)

# Two constraints on four distinct vertices clash at level 0.
clash = PositiveTypeSpec(params=(((0,), (1,)), ((2,), (3,))))
dec = decide_positive_type(t, clash, check_depth=m_star(t, 2) + 1)
print("disjoint pair:", dec)

# The level-wise procedure agrees with brute-force stem enumeration.
print("oracle agrees:", brute_force_positive_type(t, clash, m_star(t, 2) + 1))
print()

# Complete quantifier-free formulas: demanded edges must survive every
# level, and a demanded edge may not collide with a demanded non-edge.
qf = QfFormulaSpec(x_leaf=(0,), param_leaves=((1,), (2,)),
                   positive=frozenset({(0, 1)}))
print("edge through an empty level:", decide_qf_formula(t, 1, qf))
qf0 = QfFormulaSpec(x_leaf=(0,), param_leaves=((1,), (2,)),
                    positive=frozenset())
print("no demanded edges:", decide_qf_formula(t, 1, qf0))
print()

# The transfer property: a formula consistent at the stabilization level
# stays consistent one level up, for every extension of its parameters.
# On a valid template the check finds nothing; corrupt the stabilization
# level and it starts finding counterexamples.
r = random_template(3, [4, 4, 4], 0.85, [1, 2, 2], seed=5)
rep = transfer_check(r, m=2, trials=300, seed=0)
print(f"valid template: {len(rep.counterexamples)} counterexamples"
      f" in {rep.trials} trials (m* = {rep.m_star})")

broken = corrupt_level(r, rep.m_star, keep_fraction=0.0)
rep = transfer_check(broken, m=2, trials=300, seed=0)
print(f"corrupted template: {len(rep.counterexamples)} counterexamples"
      f" in {rep.trials} trials")
