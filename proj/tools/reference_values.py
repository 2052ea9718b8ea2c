"""Regenerates the high-precision constants frozen in the C++ tests.

Coupled oscillator xi^2 + 4 x1^2 + x2^2 + 2 i g x1 x2: the upper eigenvalues of F
are i mu with mu^2 the eigenvalues of A = [[4, i g], [i g, 1]].

    python3 tools/reference_values.py
"""

import itertools

import mpmath as mp

mp.mp.dps = 40


def frequencies(g):
    disc = mp.sqrt(9 - 4 * mp.mpf(g) ** 2)
    return sorted([mp.sqrt((5 - disc) / 2), mp.sqrt((5 + disc) / 2)], key=lambda z: mp.re(z))


def lattice(mu, count):
    vals = sorted(
        (sum(m * (2 * k + 1) for m, k in zip(mu, nu)) for nu in itertools.product(range(12), repeat=len(mu))),
        key=lambda z: mp.re(z),
    )
    return vals[:count]


def main():
    mu = frequencies(1)
    print("mu(g=1):", *[mp.nstr(m, 30) for m in mu])
    print("lattice(g=1):", *[mp.nstr(v, 25) for v in lattice(mu, 8)])
    for g in [1.0, 1.4, 1.45, 1.49, 1.499]:  # binary doubles, as on the C++ grid
        a, b = frequencies(mp.mpf(g))
        print(f"gap(g={g}):", mp.nstr(abs(b - a), 30))
    print("sqrt(5/2):", mp.nstr(mp.sqrt(mp.mpf(5) / 2), 30))
    a_plus = mp.mpc(0, 2)
    B = a_plus / (1 - mp.mpc(0, 1) * a_plus)
    print("B(A+=2i):", mp.nstr(mp.mpc(B), 20))
    print("lattice(mu=(2,1)) <= 9:", [v for v in lattice([2, 1], 20) if v <= 9])


if __name__ == "__main__":
    main()
