# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hypergeometric transport kernel.

Identical algorithm to _hyp_fallback.transport (adaptive Dormand-Prince
5(4) on the 2x2 fundamental matrix of the hypergeometric system); the two
implementations must be kept in sync step for step.  See the fallback
module for the path-piece encoding.
"""

from libc.math cimport pow as cpow, sqrt as csqrt

cdef extern from "complex.h":
    double complex cexp(double complex) nogil
    double cabs(double complex) nogil

DEF C2 = 1.0 / 5.0
DEF C3 = 3.0 / 10.0
DEF C4 = 4.0 / 5.0
DEF C5 = 8.0 / 9.0

DEF A21 = 1.0 / 5.0
DEF A31 = 3.0 / 40.0
DEF A32 = 9.0 / 40.0
DEF A41 = 44.0 / 45.0
DEF A42 = -56.0 / 15.0
DEF A43 = 32.0 / 9.0
DEF A51 = 19372.0 / 6561.0
DEF A52 = -25360.0 / 2187.0
DEF A53 = 64448.0 / 6561.0
DEF A54 = -212.0 / 729.0
DEF A61 = 9017.0 / 3168.0
DEF A62 = -355.0 / 33.0
DEF A63 = 46732.0 / 5247.0
DEF A64 = 49.0 / 176.0
DEF A65 = -5103.0 / 18656.0
DEF B1 = 35.0 / 384.0
DEF B3 = 500.0 / 1113.0
DEF B4 = 125.0 / 192.0
DEF B5 = -2187.0 / 6784.0
DEF B6 = 11.0 / 84.0
DEF E1 = 71.0 / 57600.0
DEF E3 = -71.0 / 16695.0
DEF E4 = 71.0 / 1920.0
DEF E5 = -17253.0 / 339200.0
DEF E6 = 22.0 / 525.0
DEF E7 = -1.0 / 40.0

DEF MIN_STEP = 1e-14


cdef inline void _rhs(
    double complex ab, double complex abc1, double complex c,
    int kind, double complex z0, double complex z1,
    double radius, double ang0, double ang1, double t,
    double complex y0, double complex y1, double complex y2, double complex y3,
    double complex* out,
) noexcept nogil:
    cdef double complex z, zp, s, m21, m22, phase
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
    out[0] = zp * y2
    out[1] = zp * y3
    out[2] = zp * (m21 * y0 + m22 * y2)
    out[3] = zp * (m21 * y1 + m22 * y3)


def transport(a, b, c, pieces, double rtol, double atol, long max_steps):
    """Same contract as the pure-Python twin: returns (y00, y01, y10, y11,
    accepted, rejected) and raises RuntimeError on budget exhaustion."""
    cdef double complex ca = complex(a)
    cdef double complex cb = complex(b)
    cdef double complex cc = complex(c)
    cdef double complex ab = ca * cb
    cdef double complex abc1 = ca + cb + 1.0
    cdef double complex y0 = 1.0, y1 = 0.0, y2 = 0.0, y3 = 1.0
    cdef double complex w0, w1, w2, w3, e0, e1, e2, e3
    cdef double complex n0, n1, n2, n3
    cdef double complex k1[4]
    cdef double complex k2[4]
    cdef double complex k3[4]
    cdef double complex k4[4]
    cdef double complex k5[4]
    cdef double complex k6[4]
    cdef double complex k7[4]
    cdef double complex z0, z1
    cdef double radius, ang0, ang1, t, h, err, sc, q, factor
    cdef long accepted = 0, rejected = 0
    cdef int kind, i

    for piece in pieces:
        kind = int(piece[0])
        z0 = complex(piece[1])
        z1 = complex(piece[2])
        radius = float(piece[3])
        ang0 = float(piece[4])
        ang1 = float(piece[5])

        t = 0.0
        h = 0.05
        _rhs(ab, abc1, cc, kind, z0, z1, radius, ang0, ang1, t, y0, y1, y2, y3, k1)
        while t < 1.0:
            if accepted + rejected >= max_steps:
                raise RuntimeError("transport exceeded the step budget")
            if h > 1.0 - t:
                h = 1.0 - t

            w0 = y0 + h * A21 * k1[0]
            w1 = y1 + h * A21 * k1[1]
            w2 = y2 + h * A21 * k1[2]
            w3 = y3 + h * A21 * k1[3]
            _rhs(ab, abc1, cc, kind, z0, z1, radius, ang0, ang1, t + C2 * h, w0, w1, w2, w3, k2)

            w0 = y0 + h * (A31 * k1[0] + A32 * k2[0])
            w1 = y1 + h * (A31 * k1[1] + A32 * k2[1])
            w2 = y2 + h * (A31 * k1[2] + A32 * k2[2])
            w3 = y3 + h * (A31 * k1[3] + A32 * k2[3])
            _rhs(ab, abc1, cc, kind, z0, z1, radius, ang0, ang1, t + C3 * h, w0, w1, w2, w3, k3)

            w0 = y0 + h * (A41 * k1[0] + A42 * k2[0] + A43 * k3[0])
            w1 = y1 + h * (A41 * k1[1] + A42 * k2[1] + A43 * k3[1])
            w2 = y2 + h * (A41 * k1[2] + A42 * k2[2] + A43 * k3[2])
            w3 = y3 + h * (A41 * k1[3] + A42 * k2[3] + A43 * k3[3])
            _rhs(ab, abc1, cc, kind, z0, z1, radius, ang0, ang1, t + C4 * h, w0, w1, w2, w3, k4)

            w0 = y0 + h * (A51 * k1[0] + A52 * k2[0] + A53 * k3[0] + A54 * k4[0])
            w1 = y1 + h * (A51 * k1[1] + A52 * k2[1] + A53 * k3[1] + A54 * k4[1])
            w2 = y2 + h * (A51 * k1[2] + A52 * k2[2] + A53 * k3[2] + A54 * k4[2])
            w3 = y3 + h * (A51 * k1[3] + A52 * k2[3] + A53 * k3[3] + A54 * k4[3])
            _rhs(ab, abc1, cc, kind, z0, z1, radius, ang0, ang1, t + C5 * h, w0, w1, w2, w3, k5)

            w0 = y0 + h * (A61 * k1[0] + A62 * k2[0] + A63 * k3[0] + A64 * k4[0] + A65 * k5[0])
            w1 = y1 + h * (A61 * k1[1] + A62 * k2[1] + A63 * k3[1] + A64 * k4[1] + A65 * k5[1])
            w2 = y2 + h * (A61 * k1[2] + A62 * k2[2] + A63 * k3[2] + A64 * k4[2] + A65 * k5[2])
            w3 = y3 + h * (A61 * k1[3] + A62 * k2[3] + A63 * k3[3] + A64 * k4[3] + A65 * k5[3])
            _rhs(ab, abc1, cc, kind, z0, z1, radius, ang0, ang1, t + h, w0, w1, w2, w3, k6)

            n0 = y0 + h * (B1 * k1[0] + B3 * k3[0] + B4 * k4[0] + B5 * k5[0] + B6 * k6[0])
            n1 = y1 + h * (B1 * k1[1] + B3 * k3[1] + B4 * k4[1] + B5 * k5[1] + B6 * k6[1])
            n2 = y2 + h * (B1 * k1[2] + B3 * k3[2] + B4 * k4[2] + B5 * k5[2] + B6 * k6[2])
            n3 = y3 + h * (B1 * k1[3] + B3 * k3[3] + B4 * k4[3] + B5 * k5[3] + B6 * k6[3])
            _rhs(ab, abc1, cc, kind, z0, z1, radius, ang0, ang1, t + h, n0, n1, n2, n3, k7)

            e0 = h * (E1 * k1[0] + E3 * k3[0] + E4 * k4[0] + E5 * k5[0] + E6 * k6[0] + E7 * k7[0])
            e1 = h * (E1 * k1[1] + E3 * k3[1] + E4 * k4[1] + E5 * k5[1] + E6 * k6[1] + E7 * k7[1])
            e2 = h * (E1 * k1[2] + E3 * k3[2] + E4 * k4[2] + E5 * k5[2] + E6 * k6[2] + E7 * k7[2])
            e3 = h * (E1 * k1[3] + E3 * k3[3] + E4 * k4[3] + E5 * k5[3] + E6 * k6[3] + E7 * k7[3])

            err = 0.0
            sc = atol + rtol * max(cabs(y0), cabs(n0))
            q = cabs(e0) / sc
            err += q * q
            sc = atol + rtol * max(cabs(y1), cabs(n1))
            q = cabs(e1) / sc
            err += q * q
            sc = atol + rtol * max(cabs(y2), cabs(n2))
            q = cabs(e2) / sc
            err += q * q
            sc = atol + rtol * max(cabs(y3), cabs(n3))
            q = cabs(e3) / sc
            err += q * q
            err = csqrt(err / 4.0)

            if err <= 1.0:
                t += h
                y0, y1, y2, y3 = n0, n1, n2, n3
                for i in range(4):
                    k1[i] = k7[i]
                accepted += 1
                factor = 10.0 if err == 0.0 else min(10.0, max(0.2, 0.9 * cpow(err, -0.2)))
                h *= factor
            else:
                rejected += 1
                h *= max(0.2, min(1.0, 0.9 * cpow(err, -0.2)))
                if h < MIN_STEP:
                    raise RuntimeError("transport step size underflow")

    return complex(y0), complex(y1), complex(y2), complex(y3), accepted, rejected
