"""Independent high-precision evaluation of the two length formulas.

    ideal:  delta = 8 sqrt(log2(2/eps^4) / n)
            ell   = floor(1/4 (t - delta) n + 1/2 - log2(1/eps))
    robust: delta = 8 sqrt(log2(2/eps^4) / ((1 - p_erase - eps) n))
            ell   = floor((t - delta - h(p_error)) (1 - p_erase) n / 4 - eps n / 2 + 1/2 - log2(1/eps))

Also prints the two thresholds. Usage: python3 oracles/calculators.py
"""
from mpmath import mp, mpf, sqrt, log, floor, findroot

mp.dps = 40


def log2(x):
    return log(x, 2)


def h(p):
    p = mpf(p)
    return -p * log2(p) - (1 - p) * log2(1 - p)


def ell_ideal(n, eps, t):
    n, eps, t = mpf(n), mpf(eps), mpf(t)
    delta = 8 * sqrt(log2(2 / eps**4) / n)
    return delta, int(floor(t * n / 4 - delta * n / 4 + mpf(1) / 2 - log2(1 / eps)))


def ell_robust(n, eps, t, p_error, p_erase):
    n, eps, t = mpf(n), mpf(eps), mpf(t)
    p_erase = mpf(p_erase)
    delta = 8 * sqrt(log2(2 / eps**4) / ((1 - p_erase - eps) * n))
    core = (t - delta - h(p_error)) * (1 - p_erase) * n / 4
    return delta, int(floor(core - eps * n / 2 + mpf(1) / 2 - log2(1 / eps)))


if __name__ == "__main__":
    d, l = ell_ideal(10**6, mpf("1e-3"), mpf("0.5"))
    print(f"ell_ideal  delta={mp.nstr(d, 15)} ell={l}")
    d, l = ell_robust(10**6, mpf("1e-3"), h(mpf("0.95")), mpf("0.02"), mpf("0.5"))
    print(f"ell_robust delta={mp.nstr(d, 15)} ell={l}")
    hinv = findroot(lambda p: h(p) - mpf(1) / 2, mpf("0.11"))
    print(f"h_inv_half={mp.nstr(hinv, 17)} r_hat={mp.nstr(1 - 2 * hinv, 17)}")
