"""Build templates, validate them, and walk the tree of leaf stems.

Run:  python3 demos/01_templates_and_trees.py
"""

from hypertemplate import (
    complete_template,
    complete_to_leaf,
    einfty_prefix,
    enumerate_edge_partners,
    random_template,
    validate,
)
from hypertemplate.serialization import dump_template

# The simplest template: level n is the complete hypergraph on n + 1
# vertices, with the maximal extension arity at every level.
t = complete_template(3, prefix_depth=4)
print("complete template:", t)
print("level sizes:", [t.level_size(n) for n in range(6)])
print("extension arities:", [t.f_value(n) for n in range(6)])
print("valid to depth 6:", validate(t, 6).valid)
print()

# A random template: each level samples its uniform edges and then proves
# the requested extension arity (degrading it if the sample cannot).
r = random_template(3, level_sizes=[4, 4, 5], edge_prob=0.85,
                    target_f=[1, 2, 2], seed=7)
rep = validate(r, 3)
print("random template:", r)
print("achieved arities:", [f for _, f in r.levels])
print("validation:", "valid" if rep.valid else rep.problems)
print()

# Stems are finite paths through the level structure.  Completion extends
# a stem so it keeps forming edges with given parameter tuples, choosing
# the least witness at every level.
target = 6
cons = [((0,) * target, (1, 0, 0, 0, 0, 0))]
nu = complete_to_leaf(r, (0, 0), cons, target)
print("completed stem:", nu)
print("edge condition holds:", einfty_prefix(r, [nu, cons[0][0], cons[0][1]]))
print()

# Finite-depth count of edge partners: how many parameter tuples one stem
# forms edges with, at a fixed depth.
count = enumerate_edge_partners(r, nu, 2)
print("edge partners of the stem at depth 2:", count)
print()

print("serialized form:")
print(dump_template(r))
