#!/usr/bin/env python3
"""Generate expanded discriminant formulas of monic polynomials (degrees 2..6)
as __int128 C++ code. Output goes to src/algebra/disc_formulas.inc."""
import sympy as sp

def emit(n):
    a = sp.symbols(" ".join(f"a{i}" for i in range(n)))
    if n == 1:
        a = (a,)
    x = sp.Symbol("x")
    f = x**n + sum(a[i] * x**i for i in range(n))
    d = sp.Poly(sp.expand(sp.discriminant(f, x)), *a)
    maxexp = [0] * n
    terms = []
    for monom, coeff in d.terms():
        terms.append((int(coeff), monom))
        for i, e in enumerate(monom):
            maxexp[i] = max(maxexp[i], e)
    lines = [f"static i128 disc_degree{n}(const std::int64_t* a) {{"]
    for i in range(n):
        lines.append(f"    i128 p{i}[{maxexp[i] + 1}];")
        lines.append(f"    p{i}[0] = 1;")
        lines.append(f"    for (int k = 1; k <= {maxexp[i]}; ++k) p{i}[k] = p{i}[k - 1] * a[{i}];")
    lines.append("    i128 s = 0;")
    for coeff, monom in terms:
        factors = [f"p{i}[{e}]" for i, e in enumerate(monom) if e]
        prod = " * ".join(factors) if factors else "1"
        lines.append(f"    s += i128({coeff}) * {prod};")
    lines.append("    return s;")
    lines.append("}")
    abs_sum = sum(abs(c) for c, _ in terms)
    return "\n".join(lines), abs_sum

out = ["// Generated by tools/gen_disc_formulas.py; do not edit.", ""]
sums = []
for n in range(2, 7):
    body, s = emit(n)
    out.append(body)
    out.append("")
    sums.append(s)
out.append("static constexpr double kDiscCoeffAbsSum[7] = {0, 0, " + ", ".join(f"{float(s)!r}" for s in sums) + "};")
open("src/algebra/disc_formulas.inc", "w").write("\n".join(out) + "\n")
