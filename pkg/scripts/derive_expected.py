#!/usr/bin/env python3
"""
Closed-form expected values for the builtin scenarios, computed without the engine.
Usage examples:
  python scripts/derive_expected.py
  python scripts/derive_expected.py torus_pd --n 2
  python scripts/derive_expected.py one_dim_f_recovery --m 3
"""
import argparse
import json
import sys


def zero_dim_point(groups=("Z^1", "Z^2", "F_2")):
    # P is a point: the slant is the augmentation, 1 on [e].
    out = {f"slant_H0[{g}]": "1" for g in groups}
    out["slant_H0"] = "1"
    return out


def _power(name, j):
    if j == 0:
        return "e"
    return name if j == 1 else f"{name}^{j}"


def one_dim_f_recovery(m=2, span=3):
    # α(γ, x) = f(γ) − x sweeps [e, γ] × (vertex m) across f(γ) unit cells, signed.
    return {f"pairing[{_power('t', j)}]": str(m * j) for j in range(-span, span + 1)}


def _det2(u, v):
    return u[0] * v[1] - u[1] * v[0]


def torus_pd(n=1):
    """
    α(y, x) = y − x. The fundamental cycle sweeps each point once with local
    degree (−1)^n, cancelled by the orientation of ω. For n = 2 the coordinate
    cycle z_i against [e, t_j] sweeps the parallelogram spanned by e_j and −e_i.
    """
    out = {"fundamental": "1"}
    if n == 2:
        orientation = (-1) ** n
        basis = [(1, 0), (0, 1)]
        matrix = [
            [orientation * _det2(basis[j], tuple(-x for x in basis[i])) for j in range(2)]
            for i in range(2)
        ]
        out["duality"] = json.dumps(matrix)
    return out


def coinvariants_h1(groups=("Z^1", "Z^2", "F_2")):
    # I_Γ ≅ H_1(Γ, Z) = Γ^ab: rank d for Z^d, rank r for F_r.
    return {f"rank[{g},I]": str(int(g.split("^" if "^" in g else "_")[1])) for g in groups}


ORACLES = {
    "zero_dim_point": zero_dim_point,
    "one_dim_f_recovery": one_dim_f_recovery,
    "torus_pd": torus_pd,
    "coinvariants_h1": coinvariants_h1,
}


def render(name, values):
    lines = [f"[expected:{name}]"]
    lines.extend(f"{key} = {value}" for key, value in values.items())
    return "\n".join(lines) + "\n"


def main(argv=None):
    parser = argparse.ArgumentParser(description="Derive expected values by closed forms")
    parser.add_argument("oracle", nargs="?", choices=sorted(ORACLES), help="Only this oracle")
    parser.add_argument("--n", type=int, default=1, help="Rank for torus_pd")
    parser.add_argument("--m", type=int, default=2, help="Multiplier for one_dim_f_recovery")
    args = parser.parse_args(argv)

    names = [args.oracle] if args.oracle else list(ORACLES)
    blocks = []
    for name in names:
        if name == "torus_pd":
            values = torus_pd(args.n)
        elif name == "one_dim_f_recovery":
            values = one_dim_f_recovery(args.m)
        else:
            values = ORACLES[name]()
        blocks.append(render(name, values))
    sys.stdout.write("\n".join(blocks))
    return 0


if __name__ == "__main__":
    sys.exit(main())
