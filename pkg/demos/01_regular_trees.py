"""Regular decorated trees A[h]: level sizes and automorphism growth."""
from kaleido.decorated import build_Ah, dec_automorphisms, level_counts
from kaleido.relstruct import constant_only, pointed_linear_order, struct_automorphisms

for a in (constant_only(3), pointed_linear_order(3)):
    print(a)
    inner = len(struct_automorphisms(a))
    prev = None
    for h in range(4):
        t = build_Ah(a, h)
        n_aut = len(dec_automorphisms(t))
        levels = list(level_counts(t).values())
        # each step squares (|A|-1 copies) and multiplies by the alphabet's own group
        predicted = "" if prev is None else f"  predicted {inner * prev ** (len(a) - 1)}"
        print(f"  h={h}  vertices={len(t):2d}  levels={levels}  |Aut|={n_aut}{predicted}")
        prev = n_aut
    print()

# ordered alphabets are rigid, so the ordered A[h] has no symmetry at all
