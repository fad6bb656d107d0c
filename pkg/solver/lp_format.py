import os

from utilities.constants import *

LP_SENSES = {SENSE_LE: "<=", SENSE_GE: ">=", SENSE_EQ: "="}

# _num
def _num(value):
    return "%.17g" % value

# _terms
def _terms(names, coefs):
    parts = []
    for k, v in coefs:
        sign = "-" if v < 0 else "+"
        parts.append("%s %s %s" % (sign, _num(abs(v)), names[k]))

    if(len(parts) == 0):
        return "0 %s" % names[0] if names else "0"
    return " ".join(parts)

# model_to_lp
def model_to_lp(model):
    """
    ----------
    - Renders a MipModel in CPLEX LP text format
    - Sections in fixed order: objective, constraints, bounds, binaries
    - Numbers use 17 significant digits
    ----------
    """

    lines = ["\\ %s" % model.name, "Minimize"]

    obj = [(k, v) for k, v in enumerate(model.obj) if v != 0.0]
    lines.append(" obj: %s" % _terms(model.names, obj))

    lines.append("Subject To")
    for coefs, sense, rhs, name in model.rows:
        terms = _terms(model.names, sorted(coefs.items()))
        lines.append(" %s: %s %s %s" % (name, terms, LP_SENSES[sense], _num(rhs)))

    lines.append("Bounds")
    for k, name in enumerate(model.names):
        if(model.is_binary[k]):
            continue
        lo = model.lb[k]
        hi = model.ub[k]
        if(hi == INF):
            if(lo != 0.0):
                lines.append(" %s >= %s" % (name, _num(lo)))
        else:
            lines.append(" %s <= %s <= %s" % (_num(lo), name, _num(hi)))

    bins = [model.names[k] for k in model.binary_indices()]
    if(len(bins) > 0):
        lines.append("Binaries")
        lines.append(" " + " ".join(bins))

    lines.append("End")
    return "\n".join(lines) + "\n"

# write_lp
def write_lp(model, path):
    p, _ = os.path.split(path)
    if(p):
        os.makedirs(p, exist_ok=True)

    with open(path, "w", newline="\n") as o_stream:
        o_stream.write(model_to_lp(model))

    return
