#!/usr/bin/env python3
# Copyright 2026 The pairlike Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Independent reference values for the off-manifold 3-class fixture.

Everything here is computed without the C++ library: the quadratic objective
by direct double summation, its minimizer by exhaustive simplex grid search
refined with projected gradient descent, and the log-odds projection by a
generic least-squares solve. The printed values are frozen into the tests.
"""
import numpy as np

R = np.array([[0.0, 0.6, 0.6],
              [0.4, 0.0, 0.6],
              [0.4, 0.4, 0.0]])
c = R.shape[0]


def delta2(p):
    s = 0.0
    for i in range(c):
        for j in range(c):
            if i != j:
                s += (R[i, j] * p[j] - R[j, i] * p[i]) ** 2
    return s


def project_simplex(v):
    u = np.sort(v)[::-1]
    css = np.cumsum(u)
    k = np.nonzero(u * np.arange(1, len(v) + 1) > (css - 1))[0][-1]
    t = (css[k] - 1) / (k + 1)
    return np.maximum(v - t, 0)


def grad(p):
    g = np.zeros(c)
    for i in range(c):
        for j in range(c):
            if i != j:
                d = R[i, j] * p[j] - R[j, i] * p[i]
                g[j] += 2 * d * R[i, j]
                g[i] -= 2 * d * R[j, i]
    return g


# Grid search, step 1e-4.
n = 10000
best, bestp = np.inf, None
a = np.arange(n + 1) / n
for i0 in range(n + 1):
    p0 = a[i0]
    p1 = a[: n + 1 - i0]
    p2 = 1 - p0 - p1
    vals = ((R[0, 1] * p1 - R[1, 0] * p0) ** 2 + (R[0, 2] * p2 - R[2, 0] * p0) ** 2
            + (R[1, 2] * p2 - R[2, 1] * p1) ** 2) * 2
    k = np.argmin(vals)
    if vals[k] < best:
        best, bestp = vals[k], np.array([p0, p1[k], p2[k]])

p = bestp.copy()
f = delta2(p)
step = 1.0
while True:
    g = grad(p)
    while True:
        q = project_simplex(p - step * g)
        fq = delta2(q)
        if fq <= f or step < 1e-20:
            break
        step *= 0.5
    if f - fq < 1e-14:
        if fq < f:
            p, f = q, fq
        break
    p, f = q, fq
    step = min(step * 2, 1.0)

print("wlw p* =", repr(p.tolist()), "delta2 =", repr(f))

# Log-odds least squares: theta_ij = log(1/r_ij - 1) on i<j rows.
rows, rhs = [], []
for i in range(c):
    for j in range(i + 1, c):
        row = np.zeros(c)
        row[j], row[i] = 1.0, -1.0
        rows.append(row)
        rhs.append(np.log(1.0 / R[i, j] - 1.0))
D, th = np.array(rows), np.array(rhs)
v, *_ = np.linalg.lstsq(D, th, rcond=None)
pb = np.exp(v) / np.exp(v).sum()
print("bc p* =", repr(pb.tolist()))
print("bc residual =", repr(float(np.linalg.norm(th - D @ v))))
print("delta2 at uniform =", repr(delta2(np.ones(c) / c)))
for j in range(c):
    col = np.array([R[i, j] / R[j, i] if i != j else 1.0 for i in range(c)])
    print("column", j, repr((col / col.sum()).tolist()))
