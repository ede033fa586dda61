"""Independent oracle values frozen into tests/oracle_values.hpp.

Run: python3 tests/oracles/generate.py > tests/oracle_values.hpp
"""

import mpmath as mp
import numpy as np

mp.mp.dps = 250


def sigma(x, l1, l2):
    return 1 - (mp.tanh(x - l1) + 1) / 2 + (mp.tanh(-x - l2) + 1) / 2


def profile_values():
    L = mp.mpf(200)
    l1 = -L + L / 2 - 10
    l2 = L - 5
    return {
        "kSigmaAtMinusL_L200": sigma(-L, l1, l2),
        "kSigmaAtZero_L200": sigma(0, l1, l2),
        "kGammaRightAtZero_L200": 1 - sigma(0, l1, l2),
        "kGammaEvenAtZero_L200": 1 - 2 * sigma(0, l1, l2),
    }


def bound_terms():
    eps, t, P, R = mp.mpf("1e-8"), mp.mpf(150), mp.mpf(4000), mp.mpf(100)
    t1 = mp.mpf(3) / 2 * t * mp.log(1 / eps)
    t2 = mp.mpf(3) / 2 * t * mp.log(2 / mp.pi * mp.sqrt(P / (3 * t)))
    t3 = R / 2
    t4 = 2 / (9 * t)
    return {
        "kBoundTerm1": t1,
        "kBoundTerm2": t2,
        "kBoundTerm3": t3,
        "kBoundTerm4": t4,
        "kBoundDampedL": t1 + t2 + t3 + t4,
    }


# Two-mode KdV field on L = pi, m = 16: q = cos x + 0.5 sin 2x.
M_TAYLOR = 16
ORDERS = 6


def kdv_taylor():
    m = M_TAYLOR
    j = np.fft.fftfreq(m, 1.0 / m)
    kappa = j.astype(float)  # pi j / L with L = pi
    d1 = 1j * kappa
    d1[m // 2] = 0.0
    M = (1j * kappa) ** 3

    # Grid starts at x = -L, so mode j carries an extra (-1)^j.
    sign = (-1.0) ** j

    def fwd(v):
        return sign * np.fft.fft(v) / m

    def inv(c):
        return np.fft.ifft(sign * c) * m

    def B(a, b):
        return -6.0 * fwd(inv(a) * inv(d1 * b))

    x = -np.pi + 2 * np.pi * np.arange(m) / m
    a = [fwd(np.cos(x) + 0.5 * np.sin(2 * x))]
    for n in range(ORDERS - 1):
        fn = sum(B(a[k], a[n - k]) for k in range(n + 1))
        a.append((-M * a[n] + fn) / (n + 1))
    return a


def fmt(v):
    return f"{float(v):.17g}"


def main():
    print("#pragma once")
    print()
    print("// Generated by tests/oracles/generate.py.")
    print()
    print("#include <array>")
    print("#include <complex>")
    print()
    print("namespace oracle {")
    print()
    for name, v in {**profile_values(), **bound_terms()}.items():
        print(f"inline constexpr double {name} = {fmt(v)};")
    print()
    print("// Taylor coefficients a_n of c(t) = sum a_n t^n for the KdV coefficient ODE,")
    print("// two-mode field cos x + 0.5 sin 2x on L = pi, m = 16, FFT order.")
    print(f"inline constexpr std::size_t kTaylorModes = {M_TAYLOR};")
    print(f"inline constexpr std::size_t kTaylorOrders = {ORDERS};")
    print("inline const std::array<std::array<std::complex<double>, kTaylorModes>, kTaylorOrders>")
    print("    kKdvTaylor = {{")
    for an in kdv_taylor():
        parts = [f"{{{z.real:.17g}, {z.imag:.17g}}}" for z in an]
        print("        {{" + ",\n          ".join(parts) + "}},")
    print("    }};")
    print()
    print("}  // namespace oracle")


if __name__ == "__main__":
    main()
