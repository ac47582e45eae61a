"""Regenerate core/src/gf_table.cpp.

For every prime power p^k <= 2^20 with k >= 2 this picks the least monic
primitive polynomial of degree k over GF(p), where polynomials are ordered by
the integer c0 + c1*p + ... + c_{k-1}*p^(k-1) of their lower coefficients.
"""
import sys

LIMIT = 1 << 20


def primes_upto(n):
    s = bytearray([1]) * (n + 1)
    s[0] = s[1] = 0
    for i in range(2, int(n ** 0.5) + 1):
        if s[i]:
            s[i * i::i] = bytearray(len(s[i * i::i]))
    return [i for i in range(n + 1) if s[i]]


def factor(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def mulmod(a, b, f, p):
    k = len(f) - 1
    r = [0] * (2 * k - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                r[i + j] = (r[i + j] + x * y) % p
    for d in range(len(r) - 1, k - 1, -1):
        c = r[d]
        if c:
            for j in range(k + 1):
                r[d - k + j] = (r[d - k + j] - c * f[j]) % p
    return r[:k]


def powx(e, f, p):
    k = len(f) - 1
    result = [1] + [0] * (k - 1)
    base = [0, 1] + [0] * (k - 2) if k >= 2 else [0]
    while e:
        if e & 1:
            result = mulmod(result, base, f, p)
        base = mulmod(base, base, f, p)
        e >>= 1
    return result


def is_primitive(f, p):
    k = len(f) - 1
    q = p ** k
    one = [1] + [0] * (k - 1)
    if f[0] == 0:
        return False
    if powx(q - 1, f, p) != one:
        return False
    return all(powx((q - 1) // r, f, p) != one for r in factor(q - 1))


def least_primitive(p, k):
    for code in range(p ** k):
        low, c = [], code
        for _ in range(k):
            low.append(c % p)
            c //= p
        f = low + [1]
        if is_primitive(f, p):
            return f
    raise RuntimeError((p, k))


def main():
    rows = []
    for p in primes_upto(1 << 10):
        k = 2
        while p ** k <= LIMIT:
            rows.append((p, k, least_primitive(p, k)))
            k += 1
    out = sys.stdout
    out.write("// generated by scripts/gen_gf_table.py; do not edit\n")
    out.write('#include "gf_table.hpp"\n\nnamespace spl::detail {\n\n')
    out.write("const std::vector<ModulusEntry>& modulus_table() {\n")
    out.write("  static const std::vector<ModulusEntry> table = {\n")
    for p, k, f in rows:
        out.write("      {%d, %d, {%s}},\n" % (p, k, ", ".join(str(c) for c in f)))
    out.write("  };\n  return table;\n}\n\n}  // namespace spl::detail\n")


if __name__ == "__main__":
    main()
