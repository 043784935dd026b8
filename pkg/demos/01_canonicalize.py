"""Canonicalizing tensor monomials from expression text.

Declares a few tensors, then canonicalizes expressions showing dummy
renaming, slot-symmetry reordering, sign collection, and zero detection.
"""

from tensorcanon.frontend import Registry, parse, build_problem, render

reg = Registry()
reg.declare_all(
    """
tensor T rank=6 sym=3..6
tensor U rank=6
tensor A rank=2 asym=1..2
tensor M rank=2 sym=1..2
tensor R rank=4 gens="-(1,2),+(1,3)(2,4),-(3,4)"
"""
)

expressions = [
    # partial symmetry lets the dummies c..f be sorted into place
    "T_{a b c d e f} U^{e d f c g h}",
    # swapping antisymmetric slots collects a sign
    "A_{2 1}",
    # a repeated component index in an antisymmetric tensor vanishes
    "A_{1 1}",
    # symmetric against antisymmetric vanishes through the contraction
    "M^{a b} A_{a b}",
    # the symmetric subset of T collides with R's antisymmetric pair
    "T_{a b c d e f} R^{c d}_{g h}",
    # the Ricci scalar of the Riemann tensor does not vanish
    "R^{a b}_{a b}",
]

for expr in expressions:
    mono = parse(expr, reg)
    prob = build_problem(mono, reg)
    print(f"{expr:32s} -> {render(prob.canonicalize(), mono, reg)}")
