#!/usr/bin/env python3
# Copyright 2026 The Coflow Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""External LP solver for `--solver mps:<path>`.

Usage: mps_linprog.py MODEL.mps SOLUTION.txt

Reads a free-layout MPS file (ROWS, COLUMNS, RHS, BOUNDS), minimizes with
scipy's HiGHS interface and writes `status <optimal|infeasible|unbounded>`
followed by one `column value` line per column.
"""

import sys

import numpy as np
from scipy.optimize import linprog
from scipy.sparse import coo_matrix


def read_free_mps(path):
    rows, row_kind, objective_row = {}, [], None
    cols, entries, cost = {}, [], {}
    rhs, lower, upper = {}, {}, {}
    section = None
    with open(path) as handle:
        for raw in handle:
            line = raw.strip()
            if not line or line.startswith("*"):
                continue
            if not raw[0].isspace():
                section = line.split()[0]
                continue
            f = line.split()
            if section == "ROWS":
                if f[0] == "N":
                    objective_row = f[1]
                else:
                    rows[f[1]] = len(row_kind)
                    row_kind.append(f[0])
            elif section == "COLUMNS":
                if "'MARKER'" in f:
                    continue
                col = cols.setdefault(f[0], len(cols))
                for name, value in zip(f[1::2], f[2::2]):
                    if name == objective_row:
                        cost[col] = float(value)
                    else:
                        entries.append((rows[name], col, float(value)))
            elif section == "RHS":
                pairs = f[1:] if len(f) % 2 == 1 else f
                for name, value in zip(pairs[0::2], pairs[1::2]):
                    if name in rows:
                        rhs[rows[name]] = float(value)
            elif section == "BOUNDS":
                kind, col = f[0], cols[f[2]]
                value = float(f[3]) if len(f) > 3 else 0.0
                if kind == "FX":
                    lower[col] = upper[col] = value
                elif kind == "LO":
                    lower[col] = value
                elif kind == "UP":
                    upper[col] = value
                elif kind == "MI":
                    lower[col] = -np.inf
                elif kind == "PL":
                    upper[col] = np.inf
                elif kind == "FR":
                    lower[col], upper[col] = -np.inf, np.inf
    n, m = len(cols), len(row_kind)
    c = np.zeros(n)
    for col, value in cost.items():
        c[col] = value
    r, k, v = zip(*entries) if entries else ((), (), ())
    a = coo_matrix((v, (r, k)), shape=(m, n)).tocsr()
    b = np.array([rhs.get(i, 0.0) for i in range(m)])
    bounds = [(lower.get(j, 0.0), upper.get(j, np.inf)) for j in range(n)]
    names = sorted(cols, key=cols.get)
    return c, a, b, row_kind, bounds, names


def solve(c, a, b, kinds, bounds):
    kinds = np.array(kinds)
    le, ge, eq = kinds == "L", kinds == "G", kinds == "E"
    a_ub = None
    b_ub = None
    if le.any() or ge.any():
        from scipy.sparse import vstack
        a_ub = vstack([a[le], -a[ge]]).tocsr()
        b_ub = np.concatenate([b[le], -b[ge]])
    a_eq = a[eq] if eq.any() else None
    b_eq = b[eq] if eq.any() else None
    return linprog(c, A_ub=a_ub, b_ub=b_ub, A_eq=a_eq, b_eq=b_eq, bounds=bounds,
                   method="highs")


def main(argv):
    if len(argv) != 3:
        sys.stderr.write(__doc__)
        return 2
    c, a, b, kinds, bounds, names = read_free_mps(argv[1])
    result = solve(c, a, b, kinds, bounds)
    status = {0: "optimal", 2: "infeasible", 3: "unbounded"}.get(result.status, "failed")
    with open(argv[2], "w") as out:
        out.write(f"status {status}\n")
        if result.x is not None:
            for name, value in zip(names, result.x):
                out.write(f"{name} {value:.17g}\n")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
