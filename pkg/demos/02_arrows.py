"""Arrow relations C -> (B)^2_A between small regular trees."""
import random

from kaleido.decorated import build_Ah
from kaleido.ramsey import ArrowInstance, ColoringAssignment, copy_table, decide_arrow, find_mono_copy, witness_search
from kaleido.relstruct import pointed_linear_order

lo2 = pointed_linear_order(2)
a0, a1 = build_Ah(lo2, 0), build_Ah(lo2, 1)

# A[1] alone is too small: color its two points differently
v = decide_arrow(ArrowInstance(a1, a1, a0))
print("A[1] -> (A[1])^2_A[0]:", v.holds, "bad coloring", v.bad_coloring.colors)

# the least witness found by growing the tree
w = witness_search(a1, a0)
print(f"witness: D[{w.m}] over |D|={len(w.alphabet)}, {len(w.tree)} vertices, {w.verdict.stats['nodes']} search nodes")
for size, m, held in w.tried:
    print(f"  tried |D|={size} m={m}: {'holds' if held else 'fails'}")

# any coloring of the witness now has a monochromatic copy
tab = copy_table(w.tree, a1, a0)
rng = random.Random(1)
gamma = ColoringAssignment(2, [rng.randrange(2) for _ in tab.a_embs])
g = find_mono_copy(w.tree, a1, a0, gamma, table=tab)
print("coloring", gamma.colors, "-> copy", g.map)

# larger arrows are searched in parallel branches; the answer does not depend on the thread count
big = ArrowInstance(build_Ah(lo2, 4), build_Ah(lo2, 2), build_Ah(lo2, 1), 2, True)
for threads in (1, 4):
    v = decide_arrow(big, threads=threads)
    print(f"rooted A[4] -> (A[2])^2_A[1] with {threads} thread(s):", v.holds, v.stats)
