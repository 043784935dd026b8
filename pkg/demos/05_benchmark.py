"""A small benchmark run: CSV records and fitted scaling exponents.

Runs the fast engine over three families at a few sizes and prints the
CSV stream plus the fitted log-log slopes. The same harness backs the
``tensorcanon bench`` command.
"""

import io

from tensorcanon.bench import run_bench

out = io.StringIO()
exponents = run_bench(
    families=["sym-frees", "cyclic-dummies", "totalsym-frustrated"],
    sizes=[4, 8, 16, 32],
    trials=3,
    engines=["fast"],
    out=out,
    verbose=False,
)

print(out.getvalue())
for (family, engine), exp in sorted(exponents.items()):
    print(f"fit {family}/{engine}: O(n^{exp:.2f})")
