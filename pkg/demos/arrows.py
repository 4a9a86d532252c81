"""Objects with representable halves are arrows; their maps are squares.

Run with ``python3 demos/arrows.py``.
"""

from isbell.envelope import isbell_hom
from isbell.fincat import commutative_square
from isbell.variants import arrow_category_check, arrow_object, commutative_squares

c = commutative_square()
print(arrow_category_check(c))

# one arrow and the maps out of it
t1, t2 = "id_a", sorted(m for m, xy in c.morphisms.items() if xy == ("a", "d"))[0]
x, y = arrow_object(c, t1), arrow_object(c, t2)
print(f"maps {t1} => {t2}: {len(isbell_hom(x, y))}; squares: {commutative_squares(c, t1, t2)}")
