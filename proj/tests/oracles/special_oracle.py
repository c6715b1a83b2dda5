# Copyright 2026 The ballslab Authors.
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

"""Reference values for special functions, pointwise geometry and constants.

Printed at 60 digits with mpmath; the tests freeze the leading 17-20.
"""

import mpmath as mp

from expectation_oracle import analytic_width, exit_probability

mp.mp.dps = 60


def main():
    for x in ["0.5", "1e-3", "100.5", "1e5"]:
        print(f"lgamma({x}) = {mp.nstr(mp.loggamma(mp.mpf(x)), 20)}")
    print(f"log|D_100| = {mp.nstr(mp.log(mp.pi ** 50 / mp.gamma(51)), 20)}")
    print(f"log|D_1000| = {mp.nstr(mp.log(mp.pi ** 500 / mp.gamma(501)), 20)}")

    for p, q, x in [("50.5", "0.5", "0.19"), ("2", "3", "0.4"), ("0.5", "0.5", "0.999999"),
                    ("100.5", "0.5", "1e-6")]:
        p, q, x = mp.mpf(p), mp.mpf(q), mp.mpf(x)
        lo = mp.betainc(p, q, 0, x)
        hi = mp.betainc(p, q, x, 1)
        print(f"beta_split({p},{q},{x}) lower={mp.nstr(mp.log(lo), 20)} upper={mp.nstr(mp.log(hi), 20)}")

    for n, a in [(50, "0.9"), (200, "0.5"), (7, "0.3"), (1000, "0.99")]:
        a = mp.mpf(a)
        cap = mp.quad(lambda x: (1 - x * x) ** (mp.mpf(n - 1) / 2), [a, 1])
        print(f"cap({n},{a}) = {mp.nstr(cap, 20)} log={mp.nstr(mp.log(cap), 20)}")

    print(f"t(3, N=100) = {mp.nstr(analytic_width(3, mp.log(100)), 20)}")
    print(f"t(10, N=1e10) = {mp.nstr(analytic_width(10, 10 * mp.log(10)), 20)}")
    t4 = analytic_width(4, 4 * mp.log(10))
    alpha4 = exit_probability(4, mp.mpf(1), t4)
    print(f"membership n=4 N=1e4 r=1: alpha={mp.nstr(alpha4, 20)} "
          f"log_prob={mp.nstr(5000 * mp.log1p(-alpha4), 20)} "
          f"prob={mp.nstr(mp.exp(5000 * mp.log1p(-alpha4)), 20)}")
    n = 40
    log_N = n * mp.log(n)
    t40 = analytic_width(n, log_N)
    for r in ["1", "0.9999", "1.0001"]:
        a = exit_probability(n, mp.mpf(r), t40)
        print(f"n=40 N=n^n r={r}: alpha={mp.nstr(a, 20)} "
              f"log_prob={mp.nstr(mp.e ** log_N / 2 * mp.log1p(-a), 20)}")

    ln2 = mp.log(2)
    ein = mp.nsum(lambda k: (-1) ** (k + 1) * ln2 ** k / (k * mp.factorial(k)), [1, mp.inf])
    e1 = mp.e1(ln2)
    print(f"I = {mp.nstr(ein, 20)} II = {mp.nstr(e1, 20)} I+II = {mp.nstr(ein + e1, 20)}")
    print(f"2I+II+1/2 = {mp.nstr(2 * ein + e1 + mp.mpf(1) / 2, 20)}")
    print(f"1/(4 pi e) = {mp.nstr(1 / (4 * mp.pi * mp.e), 20)}")
    print(f"(I+II)/(pi e) = {mp.nstr((ein + e1) / (mp.pi * mp.e), 20)}")
    print(f"I(1) = {mp.nstr(mp.quad(lambda t: -mp.expm1(-t) / t, [0, 1]), 20)} "
          f"II(1) = {mp.nstr(mp.e1(1), 20)}")


if __name__ == "__main__":
    main()
