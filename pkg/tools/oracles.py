"""Independent oracle computations for the test suite.

Every [DERIVED] literal frozen into the tests comes from this script.  Nothing
here imports the package under test: integrals are done with mpmath.quad or
dense trapezoid/Gauss grids built directly from numpy/scipy primitives, and
exact operator identities are checked with sympy rational matrices.

Run:  python tools/oracles.py
The output block produced by a run is kept verbatim at the bottom of this file.
"""

import mpmath as mp
import numpy as np
import sympy as sp

mp.mp.dps = 30

RESULTS = []


def emit(name, value):
    if isinstance(value, complex) or (hasattr(value, "imag") and value.imag != 0):
        RESULTS.append((name, f"{complex(value).real:.15g}{complex(value).imag:+.15g}j"))
    else:
        RESULTS.append((name, f"{float(value):.15g}"))


# ----------------------------------------------------------------- quadrature

def oracle_quadrature():
    # variance of the centered Gaussian with density (2*pi*h)^(-1/2) exp(-x^2/2h)
    h = mp.mpf(1)
    val = mp.quad(lambda x: x**2 * mp.exp(-x**2 / (2 * h)) / mp.sqrt(2 * mp.pi * h),
                  [-mp.inf, mp.inf])
    emit("gh_x2_variance_h1", val)

    # radial moment of the complex Gaussian (pi t)^(-1) exp(-|z|^2/t):
    # integral of |z|^6 equals 3! t^3
    t = mp.mpf("0.7")
    val = mp.quad(lambda r: r**6 * mp.exp(-r**2 / t) / (mp.pi * t) * 2 * mp.pi * r,
                  [0, mp.inf])
    emit("mu_moment_n3_t0.7", val)

    # SU(2) class integrals: (2/pi) * int_0^pi f(theta) sin^2(theta) dtheta
    val = mp.quad(lambda th: (2 / mp.pi) * (2 * mp.cos(th))**2 * mp.sin(th)**2,
                  [0, mp.pi])
    emit("class_chi_half_sq", val)
    val = mp.quad(lambda th: (2 / mp.pi) * (1 + 2 * mp.cos(2 * th)) * mp.sin(th)**2,
                  [0, mp.pi])
    emit("class_chi_1", val)

    # weighted disk moments (1-|z|^2)^a: ||z^n||^2 = pi * B(n+1, a+1)
    a, n = mp.mpf(1), 2
    val = 2 * mp.pi * mp.quad(lambda r: r**(2 * n) * (1 - r**2)**a * r, [0, 1])
    emit("disk_znorm2_n2_a1", val)


# ----------------------------------------------------------------------- fock

def hermite_fn(n, x):
    # orthonormal oscillator eigenfunctions on L^2(dx), unit scale
    e_prev = mp.pi**mp.mpf("-0.25") * mp.exp(-x**2 / 2)
    if n == 0:
        return e_prev
    e_cur = mp.sqrt(2) * x * e_prev
    for k in range(1, n):
        e_next = mp.sqrt(mp.mpf(2) / (k + 1)) * x * e_cur \
            - mp.sqrt(mp.mpf(k) / (k + 1)) * e_prev
        e_prev, e_cur = e_cur, e_next
    return e_cur


def oracle_fock():
    # ground state second moment: <e0, X^2 e0> at hbar = 1
    val = mp.quad(lambda x: x**2 * hermite_fn(0, x)**2, [-mp.inf, mp.inf])
    emit("x2_ground_h1", val)

    # normalization of a mid-order eigenfunction
    val = mp.quad(lambda x: hermite_fn(6, x)**2, [-mp.inf, mp.inf])
    emit("herm6_norm", val)
    val = mp.quad(lambda x: hermite_fn(0, x) * hermite_fn(2, x), [-mp.inf, mp.inf])
    emit("herm0_herm2_overlap", val)

    # exact ladder algebra at N = 6 with sympy rationals, hbar = 2
    N, hbar = 6, sp.Integer(2)
    a = sp.zeros(N, N)
    for n in range(1, N):
        a[n - 1, n] = sp.sqrt(hbar * n)
    adag = a.T
    comm = a * adag - adag * a
    lead = comm[:N - 1, :N - 1] - hbar * sp.eye(N - 1)
    emit("ladder_comm_lead_residual_N6_h2", float(max(abs(x) for x in lead)))
    emit("ladder_comm_corner_N6_h2", float(comm[N - 1, N - 1]))  # hbar*(1-N)
    v0 = sp.zeros(N, 1)
    v0[0] = 1
    v2 = adag * adag * v0
    emit("adag2_e0_norm2_h2", float((v2.T * v2)[0, 0]))  # hbar^2 * 2!


# ------------------------------------------------------------------ holospace

def oracle_holospace():
    # weighted Bergman a=1: K(0,0) = 1 / ||1||^2 with the (1-|z|^2)^1 weight
    a = mp.mpf(1)
    norm0 = 2 * mp.pi * mp.quad(lambda r: (1 - r**2)**a * r, [0, 1])
    emit("wbergman_K00_a1", 1 / norm0)

    # Hardy: ||z^n||^2 = 2 pi under the boundary theta-integral convention
    emit("hardy_K00", 1 / (2 * mp.pi))

    # Bergman pointwise bound ratio for F = z at z = 1/2:
    # |F(z)|^2 / (K(z,z) ||F||^2), K(z,z) = (1/pi)(1-|z|^2)^-2, ||z||^2 = pi/2
    z = mp.mpf("0.5")
    K = (1 / mp.pi) * (1 - z * z)**-2
    norm2 = mp.pi / 2
    emit("bergman_ratio_z_half", (z**2) / (K * norm2))

    # reproduce target: direct evaluation of z^3
    emit("reproduce_z3", complex(0.7 + 0.2j)**3)

    # disk isometry of the weight-a=0 fractional-linear action, F = z^2,
    # g = [[cosh s, sinh s], [sinh s, cosh s]], s = 0.3, multiplier
    # phi(z) = (alpha - conj(beta) z)^-2; dense polar Gauss-Legendre x trapezoid
    s = 0.3
    al, be = np.cosh(s), np.sinh(s)
    xs, ws = np.polynomial.legendre.leggauss(400)   # radial in u = r^2 on [0,1]
    u = 0.5 * (xs + 1.0)
    wu = 0.5 * ws
    th = 2 * np.pi * np.arange(4096) / 4096
    wth = 2 * np.pi / 4096
    r = np.sqrt(u)
    zg = r[:, None] * np.exp(1j * th[None, :])
    m = (al * zg - be) / (-be * zg + al)            # inverse Moebius action
    phi = (al - be * zg)**-2.0
    vals = np.abs(phi * m**2)**2
    integral = (wu[:, None] * vals).sum() * wth * 0.5
    emit("su11_norm2_F_z2_s03", integral)           # expect ||z^2||^2 = pi/3
    emit("pi_over_3", mp.pi / 3)

    # same action with complex alpha: unitary multiplier keeps the norm,
    # the alpha-conjugated variant does not
    al_c = np.cosh(s) * np.exp(0.4j)
    be_c = np.sinh(s) * np.exp(-0.2j)
    mc = (np.conj(al_c) * zg - be_c) / (-np.conj(be_c) * zg + al_c)
    phi_good = (al_c - np.conj(be_c) * zg)**-2.0
    phi_bad = (np.conj(al_c) - np.conj(be_c) * zg)**-2.0
    for tag, phi_c in (("good", phi_good), ("bad", phi_bad)):
        vals = np.abs(phi_c * mc**2)**2
        integral = (wu[:, None] * vals).sum() * wth * 0.5
        emit(f"su11_norm2_complex_{tag}", integral)

    # semigroup kernel check value for the Gaussian-weight plane space, t=1:
    # int K(z,w) K(w,u) dmu(w) = K(z,u) at z=0.4, u=0.3 -> e^{0.12}
    emit("sb_kernel_semigroup_target", mp.exp(mp.mpf("0.12")))


# ------------------------------------------------------------------ transform

def oracle_transform():
    # invariant-form transform of the ground state at the origin, hbar = 1:
    # (2 pi h)^(-1/2) int exp(-x^2/2h) f0(x) dx = (4 pi h)^(-1/4)
    h = mp.mpf(1)
    val = mp.quad(lambda x: mp.exp(-x**2 / (2 * h)) * hermite_fn(0, x),
                  [-mp.inf, mp.inf]) / mp.sqrt(2 * mp.pi * h)
    emit("C_f0_at_0_h1", val)
    emit("fourpi_pow_m14", (4 * mp.pi)**mp.mpf("-0.25"))

    # invariant transform of eigenfunction 3 at a complex point, hbar = 0.6,
    # against the closed form (4 pi h)^(-1/4) e^(-z^2/4h) (z/sqrt2)^3/sqrt(h^3 3!)
    h = mp.mpf("0.6")
    z = mp.mpc("0.7", "0.4")
    scaled = lambda n, x: h**mp.mpf("-0.25") * hermite_fn(n, x / mp.sqrt(h))
    val = mp.quad(lambda x: mp.exp(-(z - x)**2 / (2 * h)) * scaled(3, x),
                  [-mp.inf, mp.inf]) / mp.sqrt(2 * mp.pi * h)
    emit("C_e3_quad_h06", val)
    closed = (4 * mp.pi * h)**mp.mpf("-0.25") * mp.exp(-z**2 / (4 * h)) \
        * (z / mp.sqrt(2))**3 / mp.sqrt(h**3 * 6)
    emit("C_e3_closed_h06", closed)

    # heat-convolution transform maps f(x) = x to z on the Gaussian-weight side
    h = mp.mpf(1)
    z = mp.mpc("0.9", "-0.3")
    rho = lambda x: mp.exp(-x**2 / (2 * h)) / mp.sqrt(2 * mp.pi * h)
    val = mp.quad(lambda x: mp.exp(-(z - x)**2 / (2 * h)) * x,
                  [-mp.inf, mp.inf]) / mp.sqrt(2 * mp.pi * h)
    emit("B_x_at_z", val)

    # ground state recovery point value
    emit("pi_pow_m14", mp.pi**mp.mpf("-0.25"))

    # coherent state overlap equals the Gaussian-weight-strip kernel:
    # K(z,w) = (4 pi h)^(-1/2) exp(-(z - conj w)^2 / 4h)
    h = mp.mpf("0.8")
    z = mp.mpc("0.3", "0.5")
    w = mp.mpc("-0.2", "0.1")
    K = (4 * mp.pi * h)**mp.mpf("-0.5") * mp.exp(-(z - mp.conj(w))**2 / (4 * h))
    emit("nu_kernel_z_w_h08", K)
    psi = lambda x, zz: mp.exp(-(mp.conj(zz) - x)**2 / (2 * h)) / (2 * mp.pi * h)**mp.mpf("0.5")
    val = mp.quad(lambda x: mp.conj(psi(x, z)) * psi(x, w), [-mp.inf, mp.inf])
    emit("coherent_overlap_quad_h08", val)

    # Husimi density of eigenfunction 1: H(x,p) = (2 pi h)^-1 e^(-r^2/2h) r^2/(2h),
    # total mass 1, sup = (2 pi h)^-1 / e, second moment of x^2 equals h * 3/2 + h/2
    h = mp.mpf("0.8")
    mass = mp.quad(lambda r: (2 * mp.pi * h)**-1 * mp.exp(-r**2 / (2 * h))
                   * r**2 / (2 * h) * 2 * mp.pi * r, [0, mp.inf])
    emit("husimi_e1_mass_h08", mass)
    emit("husimi_e1_supratio", mp.exp(-1))

    # moment targets, hbar = 1: smoothing adds h/2 per x^2
    emit("weyl_x2_e0_h1", mp.mpf("0.5"))
    emit("husimi_x2_e0_h1", mp.mpf(1))
    emit("husimi_x2p2_e1_h1", mp.mpf(4))


# ------------------------------------------------------------------- quantize

def oracle_quantize():
    # heat smoothing exp(h Lap / 4) of x^4 via sympy power series (terminates)
    x, p, h = sp.symbols("x p h")
    f = x**4
    acc = sp.Integer(0)
    term = f
    k = 0
    while term != 0:
        acc += (h / 4)**k * term / sp.factorial(k)
        term = sp.diff(term, x, 2) + sp.diff(term, p, 2)
        k += 1
    emit_str = sp.expand(acc)
    RESULTS.append(("heat_smooth_x4", str(emit_str)))

    # Toeplitz values on the Gaussian plane space, t = 0.7:
    # <e1, |z|^2 e1> = 2t and <e1, z * 1> = sqrt(t), e_n = z^n / sqrt(n! t^n)
    t = mp.mpf("0.7")
    val = mp.quad(lambda r: (r**2) * (r**2 / t) * mp.exp(-r**2 / t) / (mp.pi * t)
                  * 2 * mp.pi * r, [0, mp.inf])
    emit("toeplitz_zbz_11_t07", val)
    # <z/sqrt t, z> = (1/sqrt t) int |z|^2 dmu = sqrt(t)
    val = mp.quad(lambda r: (r**2 / mp.sqrt(t)) * mp.exp(-r**2 / t) / (mp.pi * t)
                  * 2 * mp.pi * r, [0, mp.inf])
    emit("toeplitz_z_10_t07", val)

    # anti-normal vs normal ordering of x^2 at hbar = 1, N = 6, exact sympy:
    # matrices built from the ladder pair
    N = 6
    hbar = sp.Integer(1)
    a = sp.zeros(N, N)
    for n in range(1, N):
        a[n - 1, n] = sp.sqrt(hbar * n)
    ad = a.T
    X = (a + ad) / sp.sqrt(2)
    wick = (ad * ad + a * a + 2 * ad * a) / 2
    anti = (ad * ad + a * a + 2 * a * ad) / 2
    emit("wick_x2_minus_X2_00", float((wick - X * X)[0, 0]))    # -hbar/2
    emit("antiwick_x2_minus_X2_00", float((anti - X * X)[0, 0]))  # +hbar/2


# ------------------------------------------------------------------------ su2

def su2_euler(phi, theta, psi):
    cz1 = np.exp(-0.5j * phi)
    cy, sy = np.cos(theta / 2), np.sin(theta / 2)
    cz2 = np.exp(-0.5j * psi)
    # Rz(phi) Ry(theta) Rz(psi)
    a = cz1 * cy * cz2
    b = -cz1 * sy / cz2
    c = sy * cz2 / cz1
    d = cy / (cz1 * cz2)
    return a, b, c, d


def cheb_u(m, c):
    # U_m(c) with complex argument; chi_l = U_{2l}(trace/2)
    u_prev = np.ones_like(c)
    if m == 0:
        return u_prev
    u_cur = 2 * c
    for _ in range(1, m):
        u_prev, u_cur = u_cur, 2 * c * u_cur - u_prev
    return u_cur


def heat_series(t, c, lmax2=240):
    # c = trace/2 (complex allowed); sum over doubled l = 0..lmax2
    acc = np.zeros_like(c, dtype=complex)
    for m in range(lmax2 + 1):
        l = m / 2
        acc = acc + (m + 1) * np.exp(-t * l * (l + 1) / 2) * cheb_u(m, c)
    return acc


def oracle_su2():
    emit("char_l1_a07", mp.sinh(mp.mpf("2.1")) / mp.sinh(mp.mpf("0.7")))

    # heat kernel values by the character series (dense, doubled-l cutoff 240)
    th = np.array([0.9])
    emit("rho_t07_theta09", float(heat_series(0.7, np.cos(th)).real[0]))
    emit("rho_t11_theta09", float(heat_series(1.1, np.cos(th)).real[0]))

    # total mass at t = 0.5 via dense class-measure trapezoid
    thg = np.linspace(0, np.pi, 20001)
    rho = heat_series(0.5, np.cos(thg).astype(complex)).real
    mass = np.trapezoid((2 / np.pi) * rho * np.sin(thg)**2, thg)
    emit("rho_t05_mass", mass)

    # group transform of the l=1 character: coefficient path multiplies by
    # e^{-h l(l+1)/2}; cross-checked by a dense Euler-angle convolution
    hbar = 0.3
    a0 = 0.4
    g = np.array([[np.exp(a0), 0.0], [0.0, np.exp(-a0)]], dtype=complex)
    closed = np.exp(-hbar * 1 * 2 / 2) * (np.exp(2 * a0) + 1 + np.exp(-2 * a0))
    emit("transform_chi1_closed", closed)

    nphi, ntheta, npsi = 40, 30, 80
    phis = 2 * np.pi * np.arange(nphi) / nphi
    psis = 4 * np.pi * np.arange(npsi) / npsi
    xs, ws = np.polynomial.legendre.leggauss(ntheta)
    thetas = np.arccos(xs)
    P, T, S = np.meshgrid(phis, thetas, psis, indexing="ij")
    A, B, C, D = su2_euler(P, T, S)
    # weight: Haar = sin(theta) dtheta dphi dpsi / (16 pi^2); GL absorbs sin dtheta
    W = np.ones_like(P) * ws[None, :, None]
    W *= (2 * np.pi / nphi) * (4 * np.pi / npsi) / (16 * np.pi**2)
    chi1 = (A + D).real**2 + (A + D).imag**2 * 0  # placeholder, fixed below
    tr = A + D
    chi1 = tr * tr - 1.0
    # trace of g x^{-1}: x^{-1} = [[D, -B], [-C, A]] for det 1
    tr_gx = g[0, 0] * D - g[0, 1] * C + g[1, 1] * A - g[1, 0] * B
    rho_vals = heat_series(hbar, tr_gx / 2, lmax2=120)
    conv = np.sum(W * rho_vals * chi1)
    emit("transform_chi1_conv", complex(conv))


def main():
    oracle_quadrature()
    oracle_fock()
    oracle_holospace()
    oracle_transform()
    oracle_quantize()
    oracle_su2()
    width = max(len(n) for n, _ in RESULTS)
    for name, val in RESULTS:
        print(f"ORACLE {name:<{width}} {val}")


if __name__ == "__main__":
    main()


# Output of `python3 tools/oracles.py`, frozen 2026-08-14.  The
# [DERIVED] literals in tests/ are copied from these lines verbatim.
# ORACLE gh_x2_variance_h1               1
# ORACLE mu_moment_n3_t0.7               2.058
# ORACLE class_chi_half_sq               1
# ORACLE class_chi_1                     -6.82612958583978e-38
# ORACLE disk_znorm2_n2_a1               0.261799387799149
# ORACLE x2_ground_h1                    0.5
# ORACLE herm6_norm                      1
# ORACLE herm0_herm2_overlap             3.70808050282156e-35
# ORACLE ladder_comm_lead_residual_N6_h2 0
# ORACLE ladder_comm_corner_N6_h2        -10
# ORACLE adag2_e0_norm2_h2               8
# ORACLE wbergman_K00_a1                 0.636619772367581
# ORACLE hardy_K00                       0.159154943091895
# ORACLE bergman_ratio_z_half            0.28125
# ORACLE reproduce_z3                    0.259+0.286j
# ORACLE su11_norm2_F_z2_s03             1.04719755119658
# ORACLE pi_over_3                       1.0471975511966
# ORACLE su11_norm2_complex_good         1.04719755119658
# ORACLE su11_norm2_complex_bad          1.10928453881867
# ORACLE sb_kernel_semigroup_target      1.12749685157938
# ORACLE C_f0_at_0_h1                    0.531125966013598
# ORACLE fourpi_pow_m14                  0.531125966013598
# ORACLE C_e3_quad_h06                   0.0209029083639703+0.0830071829869897j
# ORACLE C_e3_closed_h06                 0.0209029083639703+0.0830071829869897j
# ORACLE B_x_at_z                        0.9-0.3j
# ORACLE pi_pow_m14                      0.751125544464943
# ORACLE nu_kernel_z_w_h08               0.320700553724292-0.0608460705146221j
# ORACLE coherent_overlap_quad_h08       0.320700553724292-0.0608460705146221j
# ORACLE husimi_e1_mass_h08              1
# ORACLE husimi_e1_supratio              0.367879441171442
# ORACLE weyl_x2_e0_h1                   0.5
# ORACLE husimi_x2_e0_h1                 1
# ORACLE husimi_x2p2_e1_h1               4
# ORACLE heat_smooth_x4                  3*h**2/4 + 3*h*x**2 + x**4
# ORACLE toeplitz_zbz_11_t07             1.4
# ORACLE toeplitz_z_10_t07               0.836660026534076
# ORACLE wick_x2_minus_X2_00             -0.5
# ORACLE antiwick_x2_minus_X2_00         0.5
# ORACLE char_l1_a07                     5.30179693078628
# ORACLE rho_t07_theta09                 2.1218837199596
# ORACLE rho_t11_theta09                 2.62711161453998
# ORACLE rho_t05_mass                    1
# ORACLE transform_chi1_closed           2.72241057507993
# ORACLE transform_chi1_conv             2.72241057507995-5.95643627025473e-17j
