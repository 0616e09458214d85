"""Reference values for the unit tests, computed with mpmath at 40 digits.

The monodromy element is obtained two ways: from the closed form and from
the connection between the basis at infinity and the local basis at z = 1,
evaluated with mpmath's own hypergeometric function.

    python3 tools/oracles.py
"""

import mpmath as mp

mp.mp.dps = 40
I = mp.mpc(0, 1)


def e(x):
    return mp.exp(2 * mp.pi * I * x)


def hyp(E0, E1, V0, T):
    r = mp.sqrt(E1**2 + V0**2)
    return I * T * (-E1 + r), I * T * (-E1 - r), mp.mpf(1) / 2 + E0 * T - I * E1 * T


def closed_a(al, be, ga):
    return (e(be - ga) - e(-ga) + e(-al) - 1) / (e(be - ga) - e(al - ga))


def S_matrix(al, be, ga):
    d = e(-al) - e(be - ga)
    return [[(e(be - ga) - e(-ga)) / d, (e(al + be - 2 * ga) - e(be - ga)) / d],
            [(1 - e(-al)) / d, (e(be - ga) - 1) / d]]


def wronski(fs, z):
    return mp.matrix([[f(z) for f in fs], [mp.diff(f, z) for f in fs]])


def connection_a(al, be, ga, z0=mp.mpc(1.3, 0.3)):
    f_inf = [lambda z: z**(-al) * mp.hyp2f1(al, al - ga + 1, al - be + 1, 1 / z),
             lambda z: z**(-be) * mp.hyp2f1(be, be - ga + 1, be - al + 1, 1 / z)]
    u_one = [lambda z: mp.hyp2f1(al, be, al + be - ga + 1, 1 - z),
             lambda z: (1 - z)**(ga - al - be) * mp.hyp2f1(ga - al, ga - be, ga - al - be + 1, 1 - z)]
    M = mp.inverse(wronski(u_one, z0)) * wronski(f_inf, z0)
    lam = e(ga - al - be)
    R = mp.inverse(M) * mp.diag([1, lam]) * M
    return R[0, 0]


def probability(eps0, eps1, v):
    rho = mp.sqrt(eps1**2 + v**2)
    return (mp.sinh(eps1)**2 * mp.cos(eps0)**2 / mp.sinh(rho)**2
            + mp.cosh(eps1)**2 * mp.sin(eps0)**2 / mp.cosh(rho)**2)


def c(z):
    z = mp.mpc(z)
    return "{%s, %s}" % (mp.nstr(z.real, 17), mp.nstr(z.imag, 17))


def main():
    print("// 2F1(a, b, c, x)")
    for a, b, cc, x in [(mp.mpc(0.3, 0.2), mp.mpc(-0.7, 0.1), mp.mpc(1.4, -0.3), mp.mpc(0.3, 0.4)),
                        (mp.mpc(0, 1.1), mp.mpc(0, -0.4), mp.mpc(0.5, -0.8), mp.mpc(-0.6, 0.2)),
                        (mp.mpc(2.5, 0), mp.mpc(-1.5, 0.5), mp.mpc(3.2, 1), mp.mpc(0.85, -0.3))]:
        print("{%s, %s, %s, %s, %s}," % (c(a), c(b), c(cc), c(x), c(mp.hyp2f1(a, b, cc, x))))

    print("// (E0, E1, V0, T) -> S, a closed form, a by connection")
    for E0, E1, V0, T in [(0.3, 0.7, 0.5, 1.2), (-0.4, 0.2, 0.9, 0.8), (1 / mp.pi, 1 / mp.pi, 1 / mp.pi, 1)]:
        al, be, ga = hyp(mp.mpf(E0), mp.mpf(E1), mp.mpf(V0), mp.mpf(T))
        S = S_matrix(al, be, ga)
        a1, a2 = closed_a(al, be, ga), connection_a(al, be, ga)
        print("params", [mp.nstr(mp.mpf(x), 17) for x in (E0, E1, V0, T)])
        print("  S", c(S[0][0]), c(S[0][1]), c(S[1][0]), c(S[1][1]))
        print("  a closed", c(a1), " a connection", c(a2), " |diff|", mp.nstr(abs(a1 - a2), 3))

    print("// (eps0, eps1, v) -> P")
    for s in [(1, 1, 1), (0.2, 0.5, 2.0), (2.0, 0.2, 0.5), (0.5, 0, 1), (0, 1.5, 0.3), (2.5, -1.2, 0.8),
              (1, 30, 2), (3, 5, 25)]:
        s = [mp.mpf(x) for x in s]
        print("{%s, %s, %s, %s}," % tuple(mp.nstr(x, 17) for x in (*s, probability(*s))))


if __name__ == "__main__":
    main()
