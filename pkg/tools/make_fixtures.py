"""Regenerate the shipped S_2^+(Gamma_0(N)) fixture files.

Needs cypari2 (``pip install cypari2``); the x0plus package itself never
imports it.  The +1 Fricke eigenspace is cut out as ker(U_N + 1), using
a_N = -w_N on weight-2 newforms of prime level.  Rows are put in reduced
echelon form over Q and scaled to primitive integer vectors.

    python tools/make_fixtures.py --prec 6000 97 109 ...
"""
import argparse
import json
import math
from fractions import Fraction
from pathlib import Path

import cypari2

LEVELS = [97, 109, 113, 127, 137, 139, 149, 151, 173, 179, 199, 239, 251, 311]


def rref_transform(rows, ncols):
    """Row-reduce ``rows[:, :ncols]`` over Q, tracking the transform."""
    m = len(rows)
    a = [[Fraction(x) for x in r[:ncols]] for r in rows]
    t = [[Fraction(int(i == j)) for j in range(m)] for i in range(m)]
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        t[r], t[piv] = t[piv], t[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        t[r] = [x * inv for x in t[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
                t[i] = [x - f * y for x, y in zip(t[i], t[r])]
        r += 1
        if r == m:
            break
    if r < m:
        raise RuntimeError("forms are dependent on the first %d coefficients" % ncols)
    return t


def basis_for(pari, n, prec):
    pari(f"mf=mfinit([{n},2],1); K=matker(mfheckemat(mf,{n})+1); B=mfbasis(mf);"
         f"F=vector(#K,j,mflinear(B,K[,j]))")
    g = int(pari("#F"))
    coeffs = [[Fraction(str(x)) for x in pari(f"mfcoefs(F[{i + 1}],{prec})")][1:]
              for i in range(g)]
    t = rref_transform(coeffs, min(prec, 200))
    forms = []
    for row in t:
        vec = [sum(c * f[k] for c, f in zip(row, coeffs)) for k in range(prec)]
        den = math.lcm(*(x.denominator for x in vec))
        ints = [int(x * den) for x in vec]
        content = math.gcd(*ints)
        forms.append([x // content for x in ints])
    return forms


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("levels", nargs="*", type=int, default=LEVELS)
    ap.add_argument("--prec", type=int, default=6000)
    ap.add_argument("--out", type=Path,
                    default=Path(__file__).resolve().parents[1] / "src/x0plus/data")
    args = ap.parse_args()
    pari = cypari2.Pari()
    pari.allocatemem(2 * 10**9)
    ver = ".".join(str(x) for x in pari("version()")[:3])
    for n in args.levels:
        forms = basis_for(pari, n, args.prec)
        rec = {
            "N": n,
            "gPlus": len(forms),
            "prec": args.prec,
            "provenance": f"PARI/GP {ver}: ker(T_{n}+1) on mfinit([{n},2],1), "
                          "rational RREF, primitive integer rows",
            "forms": forms,
        }
        path = args.out / f"N{n}.json"
        path.write_text(json.dumps(rec, separators=(",", ":")) + "\n")
        print(n, len(forms), path)


if __name__ == "__main__":
    main()
