"""Why a difficulty-weighted score separates students that GPA cannot.

Two students with identical GPAs: one earned their marks in courses that
grade low (hard), the other in courses that grade high (easy). The
weighted score ranks them; GPA does not.

Run: python demos/02_scores_vs_gpa.py
"""

from psai import compute_course_stats, default_weight_params, student_score
from psai.domain import EnrollmentRecord, Mark

params = default_weight_params()


def enrollment(sid, cid, term, mark):
    return EnrollmentRecord(student_id=sid, course_id=cid, term_index=term,
                            mark=Mark(mark), passed=mark >= 1.0)


# a small catalog: three hard courses (low class averages) and three easy ones
background = []
for i, mean in enumerate((1.2, 1.5, 1.8)):
    for j in range(10):
        background.append(enrollment(f"bg{i}{j}", f"hard{i}", 0, mean))
for i, mean in enumerate((3.6, 3.9, 4.1)):
    for j in range(10):
        background.append(enrollment(f"bg{i}{j}", f"easy{i}", 0, mean))

# sa took only easy courses, sb only hard ones; both scored 3.7 everywhere
sa = [enrollment("sa", f"easy{i}", 0, 3.7) for i in range(3)]
sb = [enrollment("sb", f"hard{i}", 0, 3.7) for i in range(3)]

stats = compute_course_stats(background + sa + sb)

gpa = 3.7
score_a = student_score([(f"easy{i}", 3.7) for i in range(3)], stats, params)
score_b = student_score([(f"hard{i}", 3.7) for i in range(3)], stats, params)

print("student A: 3.7 in three easy courses (class averages 3.6-4.1)")
print("student B: 3.7 in three hard courses (class averages 1.2-1.8)")
print()
print(f"                GPA     weighted score")
print(f"  student A    {gpa:.2f}    {score_a:8.3f}")
print(f"  student B    {gpa:.2f}    {score_b:8.3f}")
print()
print(f"identical GPAs, but the weighted score puts B {score_b / score_a:.1f}x ahead,")
print("because each mark is multiplied by its course's difficulty weight.")
