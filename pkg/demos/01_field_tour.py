"""A short tour of the finite field layer.

Every graph in this package lives over GF(q) for a prime power q.
Elements are integers 0..q-1 encoding base-p digit vectors, so the
same integer id means the same element in every run.
"""

from dkq import make_field
from dkq.field import poly_str

# A prime field first: arithmetic is just mod p.
F5 = make_field(5)
print("GF(5):", F5)
print("  3 + 4 =", F5.add(3, 4))
print("  3 * 4 =", F5.mul(3, 4))
print("  inverse of 2:", F5.inv(2))

# An extension field.  make_field picks the minimal irreducible modulus
# by the integer encoding of its coefficient vector, so GF(9) always
# means arithmetic mod x^2 + 1 unless you override it.
F9 = make_field(9)
print("\nGF(9):", F9)
print("  modulus:", poly_str(F9.modulus))

# Element 3 encodes the polynomial x (digits 0,1 base 3); squaring it
# wraps around the modulus: x^2 = -1 = 2.
print("  3 * 3 =", F9.mul(3, 3))

# You can pass your own modulus as long as it is monic and irreducible.
F9b = make_field(9, (2, 1, 1))
print("  alternate modulus:", poly_str(F9b.modulus))
print("  3 * 3 there =", F9b.mul(3, 3))

# The whole multiplication table of a small field, row by row.
F4 = make_field(4)
print("\nGF(4) multiplication table (modulus %s):" % poly_str(F4.modulus))
for a in range(4):
    print(" ", [F4.mul(a, b) for b in range(4)])

# Frobenius sanity: a^q == a for every element.
def power(spec, a, e):
    out = 1
    for _ in range(e):
        out = spec.mul(out, a)
    return out

assert all(power(F9, a, 9) == a for a in range(9))
print("\na^q == a holds for all of GF(9)")
