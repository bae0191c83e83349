"""Regenerate lambda_fixtures.json with mpmath as an independent oracle.

    python tests/fixtures/gen_lambda_fixtures.py

Values are Lambda(b, n, m) = n log b - log((b-1)(n-1)) - (m-n-1) log 2 at
1200 bits, printed to 120 significant digits.
"""

import json
from pathlib import Path

import mpmath as mp

mp.mp.prec = 1200


def lam(b, n, m):
    return n * mp.log(b) - mp.log((b - 1) * (n - 1)) - (m - n - 1) * mp.log(2)


def fmt(x):
    return mp.nstr(x, 120, strip_zeros=False)


points = [(10, 3, 10), (10, 3, 8), (10, 2, 5), (10, 7, 30), (10, 40, 150),
          (3, 5, 14), (4, 9, 40), (7, 20, 100), (16, 100, 450), (10, 200, 855)]

minimizers = {}
for n in range(2, 201):
    best = min(range(2 * n + 1, 7 * n), key=lambda m: (abs(lam(10, n, m)), m))
    minimizers[str(n)] = {"m": best, "lambda": fmt(lam(10, n, best))}

data = {
    "oracle": "mpmath %s, prec %d bits" % (mp.__version__, mp.mp.prec),
    "points": [{"base": b, "n": n, "m": m, "lambda": fmt(lam(b, n, m))} for b, n, m in points],
    "base10_window_min": minimizers,
}
out = Path(__file__).with_name("lambda_fixtures.json")
out.write_text(json.dumps(data, indent=1) + "\n")
print("wrote", out)
