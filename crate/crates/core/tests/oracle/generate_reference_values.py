#!/usr/bin/env python3
"""Reference values for the integration tests, computed with mpmath.

Nothing here calls into the crate: every value is built from mpmath
primitives (hyp1f1, loggamma, legenp, besselj, plain arithmetic) at 50
digits, then rounded to 17 significant digits and written to
reference_values.json next to this script.

    python3 generate_reference_values.py
"""

import json
from pathlib import Path

import mpmath as mp

mp.mp.dps = 50


def f(x):
    return float(mp.nstr(mp.mpf(x), 17, strip_zeros=False))


def c(z):
    z = mp.mpc(z)
    return [f(z.real), f(z.imag)]


def legendre(l, m, x):
    """P_l^m(x) with the Condon-Shortley phase, any sign of m."""
    am = abs(m)
    p = mp.legenp(l, am, x, type=2)
    # mpmath includes (-1)^m already; pin that so a library change is caught
    if m < 0:
        p = (-1) ** am * mp.factorial(l - am) / mp.factorial(l + am) * p
    return p


assert mp.almosteq(legendre(1, 1, mp.mpf(0)), -1)


def sph_j(l, x):
    x = mp.mpf(x)
    return mp.sqrt(mp.pi / (2 * x)) * mp.besselj(l + mp.mpf(1) / 2, x)


def l_prime(l, beta):
    return -mp.mpf(1) / 2 + mp.sqrt((l + mp.mpf(1) / 2) ** 2 - beta**2)


def coulomb_radial(l, beta, omega, r):
    lp = l_prime(l, beta)
    a = lp + 1 - 1j * beta
    b = 2 * lp + 2
    return mp.exp(1j * omega * r) * r**lp * mp.hyp1f1(a, b, -2j * omega * r)


def orbit(alpha, b, n, m_eff=1):
    alpha, b, n = mp.mpf(alpha), mp.mpf(b), mp.mpf(n)
    s = mp.sqrt(1 - alpha**2 / n**2)
    big_n = n**2 / alpha
    a0 = 1 / (m_eff * alpha)
    r = n**2 * a0 * s
    m_plus, m_minus = (big_n + n) / b, (big_n - n) / b
    om_plus = (m_plus - alpha / b) / r
    om_minus = (m_minus - alpha / b) / r
    energy = m_eff / s - alpha / r
    return dict(
        alpha=alpha, b=b, n=n, s=s, N=big_n, a0=a0, r=r, v=alpha / n,
        m_plus=m_plus, m_minus=m_minus, omega_plus=om_plus, omega_minus=om_minus,
        E=energy, P=m_eff * (alpha / n) / s,
    )


def pair_value(o, beta, u0, t, r, theta, phi):
    """Matched two-mode field with l = m for both modes."""
    total = mp.mpc(0)
    x = mp.cos(theta)
    for m, omega, sign in [(o["m_plus"], o["omega_plus"], 1), (o["m_minus"], o["omega_minus"], -1)]:
        l = int(m)
        rad = coulomb_radial(l, beta, omega, r) / coulomb_radial(l, beta, omega, o["r"])
        ang = legendre(l, sign * l, x) / legendre(l, sign * l, 0)
        total += u0 / 2 * rad * ang * mp.expj(sign * m * phi - omega * t)
    return total


def radial_peak(o, beta):
    """argmax over (0, 2 r_n] of |R+(r)/R+(r_n)|^2 + |R-(r)/R-(r_n)|^2."""
    def g(r):
        acc = 0
        for m, omega in [(o["m_plus"], o["omega_plus"]), (o["m_minus"], o["omega_minus"])]:
            l = int(m)
            acc += abs(coulomb_radial(l, beta, omega, r) / coulomb_radial(l, beta, omega, o["r"])) ** 2
        return acc

    grid = [2 * o["r"] * k / 2000 for k in range(1, 2001)]
    vals = [g(r) for r in grid]
    k = max(range(len(vals)), key=lambda i: vals[i])
    lo, hi = grid[max(k - 1, 0)], grid[min(k + 1, len(grid) - 1)]
    # golden-section refinement
    for _ in range(80):
        m1 = lo + (hi - lo) * (3 - mp.sqrt(5)) / 2
        m2 = lo + (hi - lo) * (mp.sqrt(5) - 1) / 2
        if g(m1) < g(m2):
            lo = m1
        else:
            hi = m2
    return (lo + hi) / 2


def main():
    out = {}

    kummer = []
    for a, b, z in [
        (3, 6, -10j),
        (1, 2, -1j),
        (11, 22, -100j),
        (mp.mpc(l_prime(1, mp.mpf(1) / 3) + 1, -mp.mpf(1) / 3), 2 * l_prime(1, mp.mpf(1) / 3) + 2, -2j),
        (mp.mpc(l_prime(4, mp.mpf(1) / 3) + 1, -mp.mpf(1) / 3), 2 * l_prime(4, mp.mpf(1) / 3) + 2, -60j),
        (mp.mpc(2.5, -0.7), 6, mp.mpc(0.5, -3)),
        (mp.mpc(1.2, 0.3), mp.mpf(3.5), -400j),
        (mp.mpc(3, -0.2), 7, mp.mpf(-4)),
        (mp.mpf(0.5), mp.mpf(1.5), mp.mpf(2)),
    ]:
        a, b, z = mp.mpc(a), mp.mpc(b), mp.mpc(z)
        kummer.append({"a": c(a), "b": c(b), "z": c(z), "value": c(mp.hyp1f1(a, b, z))})
    out["kummer_m"] = kummer

    out["log_gamma"] = [
        {"z": c(z), "value": c(mp.loggamma(z))}
        for z in [mp.mpc(1, -0.00243), mp.mpc(0.5, 0), mp.mpc(3.7, 2.1), mp.mpc(-2.5, 0.5), mp.mpc(0.1, -20), mp.mpc(150, 3)]
    ]
    out["arg_gamma"] = [
        {"z": c(z), "value": f(mp.im(mp.loggamma(z)))}
        for z in [mp.mpc(1, -0.00243), mp.mpc(2, -mp.mpf(1) / 3), mp.mpc(5.3, 7.0)]
    ]

    out["spherical_bessel_j"] = [
        {"l": l, "x": f(x), "value": f(sph_j(l, x))}
        for l, x in [(3, 10), (0, 0.5), (1, 1e-3), (5, 0.1), (10, 50), (20, 7.5), (50, 10), (2, 1000)]
    ]

    out["assoc_legendre"] = [
        {"l": l, "m": m, "x": f(x), "value": f(legendre(l, m, mp.mpf(x)))}
        for l, m, x in [(5, 3, 0.3), (5, -3, 0.3), (4, 2, -0.7), (10, 10, 0.0), (12, 4, 0.95), (1, 1, 0.5), (30, 15, 0.2)]
    ]

    out["double_factorial"] = [{"k": k, "value": int(mp.fac2(k))} for k in [-1, 0, 1, 9, 10, 25]]

    fig1 = orbit(mp.mpf(1) / 3, 1, 1)
    out["fig1_n1"] = {
        "omega_plus": f(fig1["omega_plus"]),
        "omega_minus": f(fig1["omega_minus"]),
        "r": f(fig1["r"]),
        "m_plus": f(fig1["m_plus"]),
        "m_minus": f(fig1["m_minus"]),
    }

    alpha = mp.mpf(1) / 137
    hyd = orbit(alpha, 1, 1)
    out["hydrogen_n1"] = {
        "r": f(hyd["r"]),
        "v": f(hyd["v"]),
        "E": f(hyd["E"]),
        "P": f(hyd["P"]),
        "period": f(2 * mp.pi * hyd["r"] / hyd["v"]),
        "nonrel_energy": f(1 - alpha**2 / 2),
    }

    r1 = hyd["r"]
    length = 2 * mp.pi * r1
    v_e = alpha
    dt = length / (1 / v_e - v_e)
    out["historical_phase_wave"] = {
        "v_e": f(v_e),
        "orbit_length": f(length),
        "delta_t": f(dt),
        "action_over_h": f(mp.sqrt(1 - v_e**2) * dt / (2 * mp.pi)),
    }

    out["effective_order"] = [
        {"l": l, "beta": f(beta), "value": f(l_prime(l, beta))}
        for l, beta in [(5, mp.mpf(1) / 3), (0, mp.mpf(1) / 3), (1, mp.mpf(0.00243)), (100, mp.mpf(1) / 3)]
    ]

    out["coulomb_radial"] = [
        {"l": l, "beta": f(beta), "omega": f(om), "r": f(r), "value": c(coulomb_radial(l, beta, om, r))}
        for l, beta, om, r in [(1, mp.mpf(1) / 3, 1, 1), (4, mp.mpf(1) / 3, mp.mpf(1.3), mp.mpf(2.5)), (0, mp.mpf(0.1), 2, 7)]
    ]

    third = mp.mpf(1) / 3
    out["fig1_pair"] = [
        {"t": f(t), "r_over_rn": f(k), "theta": f(th), "phi": f(ph),
         "value": c(pair_value(fig1, third, 1, t, k * fig1["r"], th, ph))}
        for t, k, th, ph in [(0, 1, mp.pi / 2, 0), (mp.mpf(0.4), mp.mpf(1.3), mp.mpf(1.2), mp.mpf(0.7)), (mp.mpf(2), mp.mpf(0.5), mp.mpf(0.9), mp.mpf(-2.1))]
    ]
    # the stored t, theta etc. are binary64 roundings; recompute with those
    for e in out["fig1_pair"]:
        t, k, th, ph = (mp.mpf(e[key]) for key in ("t", "r_over_rn", "theta", "phi"))
        e["value"] = c(pair_value(fig1, third, 1, t, k * fig1["r"], th, ph))

    peaks = []
    for n in [1, 2, 3]:
        o = orbit(third, 1, n)
        peaks.append({"n": n, "r_n_over_a0": f(o["r"] / o["a0"]), "radial_peak_over_a0": f(radial_peak(o, third) / o["a0"])})
    out["fig_radial_peaks"] = peaks

    path = Path(__file__).with_name("reference_values.json")
    path.write_text(json.dumps(out, indent=1) + "\n")


if __name__ == "__main__":
    main()
