"""Walk through the course-difficulty weight function.

A course's weight is beta * exp(-alpha * mean_mark). The two parameters
come from a pair of anchor points: an extremely hard course (class average
1.15, weight 2.0) and an extremely easy one (class average 4.15, weight
0.5), which makes the hard anchor exactly four times the easy one.

Run: python demos/01_difficulty_weights.py
"""

import numpy as np

from psai import AnchorPoint, course_weight, default_weight_params, fit_weight_params
from psai.domain import GRADE_POINTS

params = default_weight_params()
print("fitted parameters")
print(f"  alpha = {params.alpha:.9f}   (per grade point)")
print(f"  beta  = {params.beta:.9f}   (weight scale)")
print()

print("weight across the grade scale")
for mark in np.arange(0.0, 4.31, 0.5):
    bar = "#" * int(round(course_weight(params, float(mark)) * 20))
    print(f"  mean mark {mark:4.2f} -> weight {course_weight(params, float(mark)):5.3f}  {bar}")
print()

print("anchors and the midpoint")
for m in (1.15, 2.65, 4.15):
    print(f"  w({m}) = {course_weight(params, m):.6f}")
ratio = course_weight(params, 1.15) / course_weight(params, 4.15)
print(f"  hard/easy ratio = {ratio:.6f}")
print()

print("letter-grade view (standard 4.3 table)")
for letter in ("D", "C", "B", "A"):
    points = GRADE_POINTS[letter]
    print(f"  a course averaging {letter} ({points}) weighs {course_weight(params, points):.3f}")
print()

print("custom anchors work the same way:")
custom = fit_weight_params(hard=AnchorPoint(0.0, 2.0), easy=AnchorPoint(1.0, 1.0))
print(f"  anchors (0.0 -> 2.0), (1.0 -> 1.0): alpha = ln 2 = {custom.alpha:.6f}, "
      f"beta = {custom.beta:.6f}")
