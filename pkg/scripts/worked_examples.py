"""Recompute the three large worked examples two ways and print them."""
from longcf.cf_engine import expand_sqrt, unit_from_expansion
from longcf.families import generate, t1_prop_params, t2_prop_params
from longcf.props import prop1_unit, prop2_unit, prop3_unit

CASES = [
    ("t1", dict(a=5, m=3, s=7, k=2), lambda: prop1_unit(t1_prop_params(5, 3, 7, 2)[0])),
    ("t2", dict(b=5, s=3, k=4), lambda: prop2_unit(t2_prop_params(5, 3, 4)[0])),
    ("t2", dict(b=2, s=5, k=3), lambda: prop3_unit(t2_prop_params(2, 5, 3)[0])),
]


def main():
    for family, params, closed_form in CASES:
        inst = generate(family, params)
        cf = expand_sqrt(inst.d)
        oracle, sign = unit_from_expansion(inst.d)
        formula = closed_form()
        print(f"{family} {params}")
        print(f"  D = {inst.d}")
        print(f"  sqrt(D) = {cf}  (length {cf.period_len}, predicted {inst.predicted_len})")
        print(f"  unit (expansion)    = {oracle}  norm {sign:+d}")
        print(f"  unit (closed form)  = {formula}")
        print(f"  agree: {oracle == formula and cf.period == inst.predicted_period}")


if __name__ == "__main__":
    main()
