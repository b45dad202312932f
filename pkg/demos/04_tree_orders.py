"""Converging convex orders on small trees, and the configurations that produce them."""
import numpy as np

from kaleido.cclo import collapse_pair, enumerate_cclo, pi_order, realize_cclo
from kaleido.trees import nonisomorphic_trees, path_tree, star_tree

print("orders per tree shape")
for n in range(1, 7):
    counts = sorted(len(enumerate_cclo(t)) for t in nonisomorphic_trees(n))
    print(f"  n={n}: {counts}")

# rank matrix of all orders on a star: row = order, column = vertex
star = star_tree(3)
orders = enumerate_cclo(star)
ranks = np.array([[o.rank[v] for v in star.vertices] for o in orders])
print("\nstar K_{1,3}:", len(orders), "orders")
print("  center is ranked first in", int((ranks[:, 0] == 0).sum()), "of them")
print("  mean rank per vertex", ranks.mean(axis=0))

# a configuration realizing one order, and the order it projects back to
o = orders[7]
cfg = realize_cclo(star, o)
back = pi_order(cfg).restrict(star.vertices, star)
print("\norder", o.sequence, "-> realized on", len(cfg), "vertices -> projects to", back.sequence)

# two different configurations can project to the same order
q1, q2 = collapse_pair(path_tree(3), 0, 1)
p = path_tree(3)
print("\ncollapse on the 3-path:")
print("  q1 root next to", q1.r, "order", pi_order(q1).restrict(p.vertices, p).sequence)
print("  q2 root next to", q2.r, "order", pi_order(q2).restrict(p.vertices, p).sequence)
