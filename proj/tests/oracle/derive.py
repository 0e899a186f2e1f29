"""Independent high-precision reference values for the C++ tests.

Rebuilds every covariance matrix from scratch with mpmath (50 digits), using
explicit source/measurement bookkeeping rather than the library's code paths,
and writes tests/oracle_values.hpp. Run from the repository root:

    python3 tests/oracle/derive.py > tests/oracle_values.hpp
"""

import mpmath as mp

mp.mp.dps = 50
LN2 = mp.log(2)


def log2(x):
    return mp.log(x) / LN2


def g(nu):
    nu = mp.mpf(nu)
    if nu <= 1 + mp.mpf("1e-30"):
        return mp.mpf(0)
    return (nu + 1) / 2 * log2((nu + 1) / 2) - (nu - 1) / 2 * log2((nu - 1) / 2)


def b1(T, W):
    return (1 - T) * W + T


def e1(T, W):
    return (1 - T) + T * W


CLOSED = {
    ("coll_het", "dr"): lambda T, W: log2(T / (1 - T)) - g(W),
    ("hom", "dr"): lambda T, W: log2(T * e1(T, W) / ((1 - T) * b1(T, W))) / 2
    + g(mp.sqrt(W * b1(T, W) / e1(T, W))) - g(W),
    ("het", "dr"): lambda T, W: log2(2 * T / (mp.e * (1 - T) * (1 + b1(T, W)))) + g(b1(T, W)) - g(W),
    ("coll_het", "rr"): lambda T, W: log2(1 / (1 - T)) - g(W) - g(b1(T, W)),
    ("hom", "rr"): lambda T, W: log2(W / ((1 - T) * b1(T, W))) / 2 - g(W),
    ("het", "rr"): lambda T, W: log2(2 * T / (mp.e * (1 - T) * (1 + b1(T, W))))
    + g((1 - T + b1(T, W)) / T) - g(W),
    ("hom2", "dr"): lambda T, W: log2(T / (1 - T) ** 2) / 2 - g(W),
    ("coll_het2", "dr"): lambda T, W: log2(T / (1 - T) ** 2) - 2 * g(W),
    ("het2", "dr"): lambda T, W: log2(2 * T * (1 + T) / (mp.e * (1 - T) * (1 + T * T + (1 - T * T) * W)))
    - g(W),
    ("hom2", "rr"): lambda T, W: log2((1 - T + T * T) / (1 - T) ** 2) / 2 - g(W),
}


# ---- finite-V circuits as explicit linear maps of independent sources ----

class Model:
    def __init__(self):
        self.blocks = []
        self.n = 0

    def add(self, cov):
        k = cov.rows
        idx = list(range(self.n, self.n + k))
        self.blocks.append(cov)
        self.n += k
        return idx

    def cov(self):
        c = mp.zeros(self.n, self.n)
        i = 0
        for b in self.blocks:
            for r in range(b.rows):
                for s in range(b.cols):
                    c[i + r, i + s] = b[r, s]
            i += b.rows
        return c


def epr(V):
    c = mp.sqrt(V * V - 1)
    m = mp.diag([V, V, V, V])
    m[0, 2] = m[2, 0] = c
    m[1, 3] = m[3, 1] = -c
    return m


def unit(n, i):
    v = mp.zeros(1, n)
    v[0, i] = 1
    return v


def stack(rows):
    m = mp.zeros(len(rows), rows[0].cols)
    for r, row in enumerate(rows):
        for c in range(row.cols):
            m[r, c] = row[0, c]
    return m


def sub(m, idx):
    return mp.matrix([[m[i, j] for j in idx] for i in idx])


def cond(m, keep, on):
    a = sub(m, keep)
    c = mp.matrix([[m[i, j] for j in on] for i in keep])
    b = sub(m, on)
    return a - c * mp.inverse(b) * c.T


def symp(m):
    n = m.rows // 2
    om = mp.zeros(2 * n, 2 * n)
    for k in range(n):
        om[2 * k, 2 * k + 1] = 1
        om[2 * k + 1, 2 * k] = -1
    ev = mp.eig(om * m, left=False, right=False)
    vals = sorted((abs(mp.im(e)) for e in ev), reverse=True)
    return vals[::2]


def S(m):
    return mp.fsum(g(x) for x in symp(m))


def logdet(m):
    return log2(mp.det(m))


def one_way(V, T, W):
    mdl = Model()
    qa = mdl.add(mp.eye(2) * (V - 1))
    a0 = mdl.add(mp.eye(2))
    ee = mdl.add(epr(W))
    v0 = mdl.add(mp.eye(2))
    n = mdl.n
    st, ct = mp.sqrt(T), mp.sqrt(1 - T)
    A = [unit(n, qa[k]) + unit(n, a0[k]) for k in range(2)]
    E = [unit(n, ee[k]) for k in range(2)]
    E2 = [unit(n, ee[2 + k]) for k in range(2)]
    B = [st * A[k] + ct * E[k] for k in range(2)]
    Ep = [-ct * A[k] + st * E[k] for k in range(2)]
    het = [(B[0] + unit(n, v0[0])) / mp.sqrt(2), (B[1] - unit(n, v0[1])) / mp.sqrt(2)]
    L = stack([unit(n, qa[0]), unit(n, qa[1])] + B + Ep + E2 + het)
    return L * mdl.cov() * L.T  # 0 QA, 1 PA, 2-3 B, 4-7 E, 8-9 het


def two_way(V, T, W):
    mdl = Model()
    qa = mdl.add(mp.eye(2) * (V - 1))
    bc = mdl.add(epr(V))
    f1 = mdl.add(epr(W))
    f2 = mdl.add(epr(W))
    v0 = mdl.add(mp.eye(2))
    v1 = mdl.add(mp.eye(2))
    n = mdl.n
    st, ct = mp.sqrt(T), mp.sqrt(1 - T)

    def u(i):
        return unit(n, i)

    B1 = [u(bc[0]), u(bc[1])]
    C1 = [u(bc[2]), u(bc[3])]
    A1 = [st * C1[k] + ct * u(f1[k]) for k in range(2)]
    E1p = [-ct * C1[k] + st * u(f1[k]) for k in range(2)]
    A2 = [A1[k] + u(qa[k]) for k in range(2)]
    B2 = [st * A2[k] + ct * u(f2[k]) for k in range(2)]
    E2p = [-ct * A2[k] + st * u(f2[k]) for k in range(2)]
    E1pp = [u(f1[2]), u(f1[3])]
    E2pp = [u(f2[2]), u(f2[3])]
    QB = B2[0] - T * B1[0]
    qm = (B1[0] - u(v0[0])) / mp.sqrt(2)
    pp = (B1[1] + u(v0[1])) / mp.sqrt(2)
    Qm = (B2[0] - u(v1[0])) / mp.sqrt(2)
    Pp = (B2[1] + u(v1[1])) / mp.sqrt(2)
    L = stack([u(qa[0]), u(qa[1])] + B1 + B2 + E1p + E1pp + E2p + E2pp
              + [QB, Qm - T * qm, Pp + T * pp])
    return L * mdl.cov() * L.T  # 0 QA, 1 PA, 2-5 B, 6-13 E, 14 QB, 15-16 het


def exact_rates(V, T, W):
    V, T, W = mp.mpf(V), mp.mpf(T), mp.mpf(W)
    out = {}
    for two, sg in ((False, one_way(V, T, W)), (True, two_way(V, T, W))):
        Bi = [2, 3, 4, 5] if two else [2, 3]
        Ei = list(range(6, 14)) if two else [4, 5, 6, 7]
        hom = [14] if two else [2]
        het = [15, 16] if two else [8, 9]
        sfx = "2" if two else ""
        SE, SB = S(sub(sg, Ei)), S(sub(sg, Bi))
        SEq, SEqp = S(cond(sg, Ei, [0])), S(cond(sg, Ei, [0, 1]))
        SBq, SBqp = S(cond(sg, Bi, [0])), S(cond(sg, Bi, [0, 1]))
        Ihom = (logdet(sub(sg, hom)) - logdet(cond(sg, hom, [0]))) / 2
        Ihet = (logdet(sub(sg, het)) - logdet(cond(sg, het, [0, 1]))) / 2
        out["hom" + sfx, "dr"] = Ihom - (SE - SEq)
        out["coll_hom" + sfx, "dr"] = (SB - SBq) - (SE - SEq)
        out["het" + sfx, "dr"] = Ihet - (SE - SEqp)
        out["coll_het" + sfx, "dr"] = (SB - SBqp) - (SE - SEqp)
        out["hom" + sfx, "rr"] = Ihom - (SE - S(cond(sg, Ei, hom)))
        out["het" + sfx, "rr"] = Ihet - (SE - S(cond(sg, Ei, het)))
        if not two:
            BE = Bi + Ei
            out["coll_het", "rr"] = (SB - SBqp) - (SB + SE - S(sub(sg, BE)))
    return out


def het2_n(T, W, V="1e20"):
    T, W = mp.mpf(T), mp.mpf(W)
    sg = two_way(mp.mpf(V), T, W)
    vals = symp(cond(sg, list(range(6, 14)), [15, 16]))
    return sorted(vals[1:], reverse=True)


def rate_rr_het2(T, W):
    T, W = mp.mpf(T), mp.mpf(W)
    n = het2_n(T, W)
    return (log2(2 * T * (1 + T) / (mp.e * (1 - T) * (1 + T * T + (1 - T * T) * W)))
            + mp.fsum(g(x) for x in n) - 2 * g(W))


def threshold(f, T):
    T = mp.mpf(T)
    if f(T, mp.mpf(1)) <= 0:
        return mp.mpf(0)
    return (mp.findroot(lambda W: f(T, W), (mp.mpf(1) + mp.mpf("1e-20"), mp.mpf(50)),
                        solver="anderson") - 1) * (1 - T) / T


def fmt(x):
    return mp.nstr(mp.mpf(x), 17, min_fixed=-mp.inf, max_fixed=mp.inf)


def main():
    points = [("0.5", "1"), ("0.75", "1"), ("0.5", "3"), ("0.3", "1.2"), ("0.7", "1.5"),
              ("0.9", "1.05"), ("0.62", "2.4")]
    print("#pragma once\n")
    print("// Generated by tests/oracle/derive.py; do not edit by hand.\n")
    print("#include <array>\n#include <string_view>\n")
    print("namespace oracle {\n")
    print("struct ClosedFormValue {\n  std::string_view protocol, recon;\n  double T, W, rate;\n};\n")
    rows = []
    for (p, r), f in CLOSED.items():
        for T, W in points:
            rows.append(f'    {{"{p}", "{r}", {T}, {W}, {fmt(f(mp.mpf(T), mp.mpf(W)))}}}')
    for T, W in [("0.5", "1"), ("0.7", "1.5"), ("0.5", "1.2"), ("0.3", "1.2")]:
        rows.append(f'    {{"het2", "rr", {T}, {W}, {fmt(rate_rr_het2(T, W))}}}')
    print(f"inline constexpr std::array<ClosedFormValue, {len(rows)}> kClosedForms = {{{{")
    print(",\n".join(rows))
    print("}};\n")

    print("struct ExactValue {\n  std::string_view protocol, recon;\n  double V, rate;\n};\n")
    print("// Exact finite-V rates at T = 0.7, W = 1.5.")
    rows = []
    for V in ("1e3", "1e4"):
        for (p, r), val in sorted(exact_rates(mp.mpf(V), "0.7", "1.5").items()):
            rows.append(f'    {{"{p}", "{r}", {V}, {fmt(val)}}}')
    print(f"inline constexpr std::array<ExactValue, {len(rows)}> kExactRates = {{{{")
    print(",\n".join(rows))
    print("}};\n")

    print("struct Het2Eigenvalues {\n  double T, W;\n  std::array<double, 3> n;\n};\n")
    rows = []
    for T, W in [("0.7", "1.5"), ("0.5", "1"), ("0.3", "2.5"), ("0.9", "1.2"), ("0.02", "4"),
                 ("0.98", "1.01")]:
        n = het2_n(T, W)
        rows.append(f"    {{{T}, {W}, {{{fmt(n[0])}, {fmt(n[1])}, {fmt(n[2])}}}}}")
    print(f"inline constexpr std::array<Het2Eigenvalues, {len(rows)}> kHet2Eigenvalues = {{{{")
    print(",\n".join(rows))
    print("}};\n")

    hom_rr = threshold(CLOSED["hom", "rr"], "0.5")
    print(f"inline constexpr double kHomRrThresholdAtHalf = {fmt(hom_rr)};")
    het_root = mp.e / (1 + mp.e)
    print(f"inline constexpr double kHetDrPureLossRoot = {fmt(het_root)};")
    het2_root = mp.findroot(lambda T: T * (1 + T) - mp.e * (1 - T), 0.64)
    print(f"inline constexpr double kHet2DrPureLossRoot = {fmt(het2_root)};")
    print(f"inline constexpr double kCollHom2DrPureLossRoot = {fmt((3 - mp.sqrt(5)) / 2)};")
    diff = lambda T: (threshold(CLOSED["hom2", "dr"], T) - threshold(CLOSED["hom", "dr"], T))
    tc = mp.findroot(diff, (mp.mpf("0.84"), mp.mpf("0.88")), solver="anderson")
    print(f"inline constexpr double kHomDrCrossover = {fmt(tc)};")
    print(f"inline constexpr double kG2 = {fmt(g(2))};")
    print("\n}  // namespace oracle")


if __name__ == "__main__":
    main()
