"""Reference values for the test suite, computed with mpmath at 50 digits.

Independent of the C++ code: binomial weights come from exact rational
binomial coefficients, dispersions from direct sums. Run with
`python3 tools/oracles/derive_values.py` and paste into tests when the
definitions change.
"""

from functools import lru_cache
import itertools

import mpmath as mp

mp.mp.dps = 50


@lru_cache(maxsize=None)
def weights(n, p):
    p = mp.mpf(p)
    q = 1 - p
    return [mp.binomial(n, l) * p**l * q ** (n - l) for l in range(n + 1)]


def enc(kind, x):
    if kind == "frequency":
        return x
    if kind == "amplitude":
        return mp.sqrt(x)
    return mp.asin(2 * x - 1) / mp.pi + mp.mpf(1) / 2


def prob_bits(kind, n, p, bits):
    r = mp.ldexp(1, -(bits + 1))
    target = enc(kind, mp.mpf(p))
    w = weights(n, p)
    return mp.fsum(w[l] for l in range(n + 1) if abs(enc(kind, mp.mpf(l) / n) - target) < r)


def endpoint_eta(n, p, bits):
    r = mp.pi / 2 * mp.ldexp(1, -(bits + 1))
    p = mp.mpf(p)
    w = weights(n, p)
    out = []
    for l in range(n + 1):
        nu = mp.mpf(l) / n
        d = mp.sqrt((mp.sqrt(nu) - mp.sqrt(p)) ** 2 + (mp.sqrt(1 - nu) - mp.sqrt(1 - p)) ** 2)
        if d < r:
            out.append(w[l])
    return mp.fsum(out)


def mean_root(n, p):
    w = weights(n, p)
    return mp.fsum(w[l] * mp.sqrt(mp.mpf(l) / n) for l in range(n + 1))


def dispersion(n, p):
    return mp.mpf(p) - mean_root(n, p) ** 2


def rotation(tau, theta, phi):
    tau, theta, phi = (mp.radians(x) for x in (tau, theta, phi))
    a = mp.cos(tau) + 1j * mp.sin(tau) * mp.cos(theta)
    b = mp.sin(tau) * mp.sin(theta) * mp.expj(-phi)
    return [[a, b], [-mp.conj(b), mp.conj(a)]]


def transformed_two(n, p1, rot):
    """Per-component D^2 of U eta for K = 2 with zero phases."""
    w = weights(n, p1)
    e1 = mean_root(n, p1)
    e2 = mp.fsum(w[l] * mp.sqrt(mp.mpf(n - l) / n) for l in range(n + 1))
    out = []
    for k in range(2):
        s = 0
        for l in range(n + 1):
            x1 = mp.sqrt(mp.mpf(l) / n) - e1
            x2 = mp.sqrt(mp.mpf(n - l) / n) - e2
            s += w[l] * abs(rot[k][0] * x1 + rot[k][1] * x2) ** 2
        out.append(s)
    return out


def enumerated_total(n, probs):
    """N * total dispersion by summing over all K^N outcome sequences."""
    k = len(probs)
    probs = [mp.mpf(x) for x in probs]
    acc_mean = [mp.mpf(0)] * k
    cells = []
    for seq in itertools.product(range(k), repeat=n):
        w = mp.fprod(probs[s] for s in seq)
        counts = [seq.count(j) for j in range(k)]
        cells.append((w, counts))
    for w, counts in cells:
        for j in range(k):
            acc_mean[j] += w * mp.sqrt(mp.mpf(counts[j]) / n)
    total = mp.fsum(w * sum((mp.sqrt(mp.mpf(c) / n) - acc_mean[j]) ** 2 for j, c in enumerate(counts))
                    for w, counts in cells)
    return n * total


def show(label, value):
    print(f"{label} = {mp.nstr(value, 17)}")


def main():
    n = 4000
    show("prob frequency N=4000 p=0.5 S=6", prob_bits("frequency", n, 0.5, 6))
    show("prob arcsine N=4000 p=0.5 S=6", prob_bits("arcsine", n, 0.5, 6))
    show("prob amplitude N=4000 p=0.5 S=6", prob_bits("amplitude", n, 0.5, 6))
    for kind in ("amplitude", "arcsine"):
        best = None
        for k in range(1, 200):
            v = prob_bits(kind, n, k / 200, 6)
            if best is None or v < best[0]:
                best = (v, k)
        show(f"min {kind} over k/200 (k={best[1]})", best[0])
    show("prob arcsine N=4000 p=0.002 S=6", prob_bits("arcsine", n, 0.002, 6))
    show("prob arcsine N=4000 p=0.975 S=6", prob_bits("arcsine", n, 0.975, 6))
    show("endpoint eta N=4000 p=0.3 S=6", endpoint_eta(n, 0.3, 6))
    show("endpoint eta N=4000 p=0.3 S=1", endpoint_eta(n, 0.3, 1))
    show("prob arcsine N=4000 p=0.3 S=1", prob_bits("arcsine", n, 0.3, 1))
    show("N*D2_j N=100 p=0.02", 100 * dispersion(100, 0.02))
    show("N*D2_j N=4000 p=0.02", n * dispersion(n, 0.02))
    show("N*D2_j N=4000 p=0.5", n * dispersion(n, 0.5))
    for k in (2, 3, 4):
        show(f"N*D2 uniform K={k} N=4000", n * k * dispersion(n, mp.mpf(1) / k))
    rot = rotation(75, 50, 110)
    for p1 in (0.2, 0.5):
        d = transformed_two(n, p1, rot)
        show(f"N*D2(psi1) N=4000 p1={p1}", n * d[0])
        show(f"N*D2(psi2) N=4000 p1={p1}", n * d[1])
    for m in (1, 3, 6):
        show(f"enumerated N*D2 K=3 uniform N={m}", enumerated_total(m, [mp.mpf(1) / 3] * 3))
    show("enumerated N*D2 K=4 (0.1,0.2,0.3,0.4) N=5", enumerated_total(5, ["0.1", "0.2", "0.3", "0.4"]))
    show("binomial pmf N=50 p=0.5 l=25", mp.binomial(50, 25) / mp.mpf(2) ** 50)
    show("E sqrt(L/N) N=10 p=0.3", mean_root(10, "0.3"))


if __name__ == "__main__":
    main()
