"""Pure-Python twin of the compiled hypergeometric transport kernel.

Propagates the fundamental 2x2 solution matrix of the hypergeometric
equation

    z(1-z) w'' + [c - (a+b+1) z] w' - a b w = 0

along a piecewise path in the complex plane, using an adaptive embedded
Dormand-Prince 5(4) step (FSAL).  The compiled kernel in _hyp_core.pyx
implements the identical algorithm; keep the two in sync, including the
order of floating-point operations, so their outputs agree closely and
the benchmark compares like with like.

Path pieces are tuples (kind, z0, z1, radius, ang0, ang1): kind 0 is the
segment z0 -> z1 (radius and angles unused); kind 1 is the arc around
center z0 with the given radius from angle ang0 to ang1 (z1 unused).
"""

from cmath import exp as cexp

# Dormand-Prince 5(4) tableau
_C2, _C3, _C4, _C5 = 1 / 5, 3 / 10, 4 / 5, 8 / 9
_A21 = 1 / 5
_A31, _A32 = 3 / 40, 9 / 40
_A41, _A42, _A43 = 44 / 45, -56 / 15, 32 / 9
_A51, _A52, _A53, _A54 = 19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729
_A61, _A62, _A63, _A64, _A65 = 9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656
_B1, _B3, _B4, _B5, _B6 = 35 / 384, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84
_E1, _E3, _E4, _E5, _E6, _E7 = (
    71 / 57600,
    -71 / 16695,
    71 / 1920,
    -17253 / 339200,
    22 / 525,
    -1 / 40,
)

_MIN_STEP = 1e-14


def _rhs(ab, abc1, c, kind, z0, z1, radius, ang0, ang1, t, y0, y1, y2, y3):
    """Derivative of the fundamental matrix at path parameter t."""
    if kind == 0:
        zp = z1 - z0
        z = z0 + t * zp
    else:
        phase = cexp(1j * (ang0 + t * (ang1 - ang0)))
        z = z0 + radius * phase
        zp = 1j * radius * (ang1 - ang0) * phase
    s = 1.0 / (z * (1.0 - z))
    m21 = ab * s
    m22 = (abc1 * z - c) * s
    return (
        zp * y2,
        zp * y3,
        zp * (m21 * y0 + m22 * y2),
        zp * (m21 * y1 + m22 * y3),
    )


def transport(a, b, c, pieces, rtol, atol, max_steps):
    """Fundamental matrix along `pieces`; returns (y00, y01, y10, y11,
    accepted_steps, rejected_steps).  Raises RuntimeError when the step
    budget runs out or the step size underflows."""
    a, b, c = complex(a), complex(b), complex(c)
    ab = a * b
    abc1 = a + b + 1.0
    y0, y1, y2, y3 = 1.0 + 0j, 0j, 0j, 1.0 + 0j
    accepted = 0
    rejected = 0

    for piece in pieces:
        kind, z0, z1, radius, ang0, ang1 = piece
        kind = int(kind)
        z0, z1 = complex(z0), complex(z1)
        radius, ang0, ang1 = float(radius), float(ang0), float(ang1)

        t = 0.0
        h = 0.05
        k1 = _rhs(ab, abc1, c, kind, z0, z1, radius, ang0, ang1, t, y0, y1, y2, y3)
        while t < 1.0:
            if accepted + rejected >= max_steps:
                raise RuntimeError("transport exceeded the step budget")
            if h > 1.0 - t:
                h = 1.0 - t

            w0 = y0 + h * _A21 * k1[0]
            w1 = y1 + h * _A21 * k1[1]
            w2 = y2 + h * _A21 * k1[2]
            w3 = y3 + h * _A21 * k1[3]
            k2 = _rhs(ab, abc1, c, kind, z0, z1, radius, ang0, ang1, t + _C2 * h, w0, w1, w2, w3)

            w0 = y0 + h * (_A31 * k1[0] + _A32 * k2[0])
            w1 = y1 + h * (_A31 * k1[1] + _A32 * k2[1])
            w2 = y2 + h * (_A31 * k1[2] + _A32 * k2[2])
            w3 = y3 + h * (_A31 * k1[3] + _A32 * k2[3])
            k3 = _rhs(ab, abc1, c, kind, z0, z1, radius, ang0, ang1, t + _C3 * h, w0, w1, w2, w3)

            w0 = y0 + h * (_A41 * k1[0] + _A42 * k2[0] + _A43 * k3[0])
            w1 = y1 + h * (_A41 * k1[1] + _A42 * k2[1] + _A43 * k3[1])
            w2 = y2 + h * (_A41 * k1[2] + _A42 * k2[2] + _A43 * k3[2])
            w3 = y3 + h * (_A41 * k1[3] + _A42 * k2[3] + _A43 * k3[3])
            k4 = _rhs(ab, abc1, c, kind, z0, z1, radius, ang0, ang1, t + _C4 * h, w0, w1, w2, w3)

            w0 = y0 + h * (_A51 * k1[0] + _A52 * k2[0] + _A53 * k3[0] + _A54 * k4[0])
            w1 = y1 + h * (_A51 * k1[1] + _A52 * k2[1] + _A53 * k3[1] + _A54 * k4[1])
            w2 = y2 + h * (_A51 * k1[2] + _A52 * k2[2] + _A53 * k3[2] + _A54 * k4[2])
            w3 = y3 + h * (_A51 * k1[3] + _A52 * k2[3] + _A53 * k3[3] + _A54 * k4[3])
            k5 = _rhs(ab, abc1, c, kind, z0, z1, radius, ang0, ang1, t + _C5 * h, w0, w1, w2, w3)

            w0 = y0 + h * (_A61 * k1[0] + _A62 * k2[0] + _A63 * k3[0] + _A64 * k4[0] + _A65 * k5[0])
            w1 = y1 + h * (_A61 * k1[1] + _A62 * k2[1] + _A63 * k3[1] + _A64 * k4[1] + _A65 * k5[1])
            w2 = y2 + h * (_A61 * k1[2] + _A62 * k2[2] + _A63 * k3[2] + _A64 * k4[2] + _A65 * k5[2])
            w3 = y3 + h * (_A61 * k1[3] + _A62 * k2[3] + _A63 * k3[3] + _A64 * k4[3] + _A65 * k5[3])
            k6 = _rhs(ab, abc1, c, kind, z0, z1, radius, ang0, ang1, t + h, w0, w1, w2, w3)

            n0 = y0 + h * (_B1 * k1[0] + _B3 * k3[0] + _B4 * k4[0] + _B5 * k5[0] + _B6 * k6[0])
            n1 = y1 + h * (_B1 * k1[1] + _B3 * k3[1] + _B4 * k4[1] + _B5 * k5[1] + _B6 * k6[1])
            n2 = y2 + h * (_B1 * k1[2] + _B3 * k3[2] + _B4 * k4[2] + _B5 * k5[2] + _B6 * k6[2])
            n3 = y3 + h * (_B1 * k1[3] + _B3 * k3[3] + _B4 * k4[3] + _B5 * k5[3] + _B6 * k6[3])
            k7 = _rhs(ab, abc1, c, kind, z0, z1, radius, ang0, ang1, t + h, n0, n1, n2, n3)

            err = 0.0
            for old, new, e in (
                (y0, n0, h * (_E1 * k1[0] + _E3 * k3[0] + _E4 * k4[0] + _E5 * k5[0] + _E6 * k6[0] + _E7 * k7[0])),
                (y1, n1, h * (_E1 * k1[1] + _E3 * k3[1] + _E4 * k4[1] + _E5 * k5[1] + _E6 * k6[1] + _E7 * k7[1])),
                (y2, n2, h * (_E1 * k1[2] + _E3 * k3[2] + _E4 * k4[2] + _E5 * k5[2] + _E6 * k6[2] + _E7 * k7[2])),
                (y3, n3, h * (_E1 * k1[3] + _E3 * k3[3] + _E4 * k4[3] + _E5 * k5[3] + _E6 * k6[3] + _E7 * k7[3])),
            ):
                sc = atol + rtol * max(abs(old), abs(new))
                q = abs(e) / sc
                err += q * q
            err = (err / 4.0) ** 0.5

            if err <= 1.0:
                t += h
                y0, y1, y2, y3 = n0, n1, n2, n3
                k1 = k7  # FSAL
                accepted += 1
                factor = 10.0 if err == 0.0 else min(10.0, max(0.2, 0.9 * err ** -0.2))
                h *= factor
            else:
                rejected += 1
                h *= max(0.2, min(1.0, 0.9 * err ** -0.2))
                if h < _MIN_STEP:
                    raise RuntimeError("transport step size underflow")

    return y0, y1, y2, y3, accepted, rejected
