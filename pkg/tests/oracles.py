"""Independent reference computations used to freeze expected values.

Nothing here imports cliffcert. The rank-2 oracle works in the original basis
{C, D} with the raw intersection numbers, so it shares no code with the
{C, E} minimizer it checks.
"""

from fractions import Fraction


def cd_pair(p, a, u, v):
    """Pairing of u = (x1, y1), v = (x2, y2) written in the basis {C, D}."""
    c2, cd, d2 = 4 * a, 2 * a + 2 * p + 1, 4 * p + 2
    return u[0] * v[0] * c2 + (u[0] * v[1] + u[1] * v[0]) * cd + u[1] * v[1] * d2


def brute_cliff_rank2(p, a, n, box=60):
    """Min of F.C_n - F^2 - 2 over F = xC + yD, |x|, |y| <= box, under

    F^2 >= 0, F.D > 2, F.C_n <= g(C_n) - 1, then capped by floor((g - 1)/2).
    Returns (reported, lattice_min, argmin in (s, t) coords, feasible count).
    """
    Cn, D = (n, 0), (0, 1)
    genus = 1 + cd_pair(p, a, Cn, Cn) // 2
    best, arg, count = None, [], 0
    for x in range(-box, box + 1):
        for y in range(-box, box + 1):
            F = (x, y)
            f2 = cd_pair(p, a, F, F)
            fcn = cd_pair(p, a, F, Cn)
            if f2 < 0 or cd_pair(p, a, F, D) <= 2 or fcn > genus - 1:
                continue
            count += 1
            val = fcn - f2 - 2
            # xC + yD = (x + y)C - yE, so s = x + y, t = -y
            st = (x + y, -y)
            if best is None or val < best:
                best, arg = val, [st]
            elif val == best:
                arg.append(st)
    cap = (genus - 1) // 2
    reported = best if best is not None and best < cap else cap
    return reported, best, sorted(arg), count


def brute_cliff_rank1(g, n, box=40):
    c2 = 2 * g - 2
    genus = 1 + n * n * c2 // 2
    vals = [s * n * c2 - s * s * c2 - 2 for s in range(1, box) if s * n * c2 <= genus - 1]
    cap = (genus - 1) // 2
    best = min(vals) if vals else None
    return best if best is not None and best < cap else cap


def gamma(degree, rank, h0):
    return Fraction(degree, rank) - Fraction(2 * h0, rank) + 2
