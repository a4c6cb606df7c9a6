"""Independent BCa / agreement computations. Reimplements the counter RNG from its
definition so the frozen values do not depend on the C++ code path."""
import math
from scipy import stats
from sklearn.metrics import cohen_kappa_score

M = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15

def splitmix64(x):
    x = (x + GOLDEN) & M
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & M
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & M
    return z ^ (z >> 31)

def stream_key(seed, stream):
    return splitmix64(seed ^ splitmix64(stream))

def draw(key, counter, n):
    v = splitmix64((key + counter * GOLDEN) & M)
    return (v * n) >> 64

def quantile7(s, p):
    h = (len(s) - 1) * p
    lo = math.floor(h)
    hi = min(lo + 1, len(s) - 1)
    return s[lo] + (h - lo) * (s[hi] - s[lo])

def bca(data, stat, B=2000, seed=42, level=0.95):
    n = len(data)
    theta = stat(data)
    boots = []
    for r in range(B):
        key = stream_key(seed, r)
        sample = [data[draw(key, j, n)] for j in range(n)]
        boots.append(stat(sample))
    boots.sort()
    less = sum(1 for t in boots if t < theta)
    eq = sum(1 for t in boots if t == theta)
    z0 = stats.norm.ppf((less + 0.5 * eq) / B)
    jack = [stat(data[:i] + data[i + 1:]) for i in range(n)]
    jm = sum(jack) / n
    num = sum((jm - t) ** 3 for t in jack)
    den = 6 * sum((jm - t) ** 2 for t in jack) ** 1.5
    a = num / den if den > 0 else 0.0
    out = []
    for q in [(1 - level) / 2, 1 - (1 - level) / 2]:
        zq = stats.norm.ppf(q)
        adj = stats.norm.cdf(z0 + (z0 + zq) / (1 - a * (z0 + zq)))
        out.append(quantile7(boots, adj))
    return theta, z0, a, out

mean = lambda xs: sum(xs) / len(xs)
fixture = [0.13, 0.27, 0.31, 0.44, 0.58, 0.92, 1.37, 2.05, 3.61, 5.89]
theta, z0, a, ci = bca(fixture, mean)
print("bca10 theta=%r z0=%r a=%r lo=%r hi=%r" % (theta, z0, a, ci[0], ci[1]))
print("first draws seed42 stream0:", [draw(stream_key(42, 0), j, 10) for j in range(5)])

def fleiss(table):
    N = len(table); n = sum(table[0]); k = len(table[0])
    pj = [sum(row[j] for row in table) / (N * n) for j in range(k)]
    Pi = [(sum(c * c for c in row) - n) / (n * (n - 1)) for row in table]
    Pbar = sum(Pi) / N; Pe = sum(p * p for p in pj)
    return (Pbar - Pe) / (1 - Pe)

print("fleiss4x3 %r" % fleiss([[3, 0, 0], [1, 2, 0], [0, 1, 2], [1, 1, 1]]))
r1 = [0, 0, 1, 1, 2, 2, 0, 1, 2, 2]
r2 = [0, 1, 1, 2, 2, 1, 0, 0, 2, 2]
for w in [None, "linear", "quadratic"]:
    print("cohen", w, repr(cohen_kappa_score(r1, r2, weights=w)))
