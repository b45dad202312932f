"""Build a chain of verified arrows and use it to find monochromatic copies level by level."""
import random
import time

from kaleido.decorated import build_Ah
from kaleido.ramsey import ColoringAssignment, build_chain, copy_table, proof_follow_mono, verify_chain
from kaleido.relstruct import constant_only

c2 = constant_only(2)
u = build_Ah(c2, 1)

t0 = time.perf_counter()
chain = build_chain(u, c2, ell=1)
print("level sizes:", [lv.n for lv in chain.levels], f"({time.perf_counter() - t0:.2f} s)")
for name, v in verify_chain(chain):
    print(f"  {name}: holds={v.holds} nodes={v.stats['nodes']}")

t = chain.target()
tab = copy_table(t, u, chain.colored())
print(f"T has {len(t)} vertices, {len(tab.a_embs)} colored copies, {len(tab.b_embs)} copies of u")

rng = random.Random(3)
for _ in range(5):
    gamma = ColoringAssignment(2, [rng.randrange(2) for _ in tab.a_embs])
    g = proof_follow_mono(chain, gamma)
    colors = {gamma[tab.index[g.compose(e).pairs]] for e in tab.ab_embs}
    print("  copy", sorted(g.image), "colors", colors)
