"""Side-by-side x1 = 1 slices of the classical and quantum sets.

For a small (x2, x3) grid, prints the allowed x4 interval in each set.
The quantum interval always contains the classical one, and the rescaled
arcsine map sends one family of bounds exactly onto the other.
"""

import math

scale = 2.0 / math.pi

print(f"{'x2':>6s} {'x3':>6s} | {'classical x4':>22s} | {'quantum x4':>22s}")
for i in range(5):
    x2 = -1.0 + 0.5 * i
    for j in range(5):
        x3 = -1.0 + 0.5 * j
        c_low = max(x2 + x3 - 1.0, -1.0 - x2 - x3)
        c_high = min(1.0 - x2 + x3, 1.0 + x2 - x3)
        t2, t3 = math.asin(x2), math.asin(x3)
        q_low = -math.cos(t2 + t3)
        q_high = math.cos(t2 - t3)
        assert q_low <= c_low + 1e-12 and c_high <= q_high + 1e-12
        print(
            f"{x2:6.2f} {x3:6.2f} | [{c_low:9.4f}, {c_high:9.4f}] "
            f"| [{q_low:9.4f}, {q_high:9.4f}]"
        )

print()
print("Check one mapped bound: mu applied to the quantum interval at")
x2, x3 = 0.5, -0.5
t2, t3 = math.asin(x2), math.asin(x3)
mapped_low = scale * math.asin(-math.cos(t2 + t3))
mapped_high = scale * math.asin(math.cos(t2 - t3))
u2, u3 = scale * t2, scale * t3
c_low = max(u2 + u3 - 1.0, -1.0 - u2 - u3)
c_high = min(1.0 - u2 + u3, 1.0 + u2 - u3)
print(f"(x2, x3) = ({x2}, {x3}) gives [{mapped_low:.6f}, {mapped_high:.6f}],")
print(f"the classical interval at (mu(x2), mu(x3)) is [{c_low:.6f}, {c_high:.6f}].")
