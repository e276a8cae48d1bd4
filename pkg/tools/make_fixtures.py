"""Regenerate src/lorentz_aut/fixtures/*.json from the builders in lorentz_aut.halphen."""
from pathlib import Path

from lorentz_aut.io import dumps
from lorentz_aut.halphen import HalphenModel, builtin_configs, cycle_fiber

OUT = Path(__file__).resolve().parents[1] / "src" / "lorentz_aut" / "fixtures"

DESCRIPTIONS = {
    "unnodal": "no reducible fibers",
    "line_conic": "one I2 fiber: a line through three points plus a conic through six",
    "three_lines": "one I3 fiber made of three lines",
    "a1_a2": "fibers I2 + I3",
    "a2_a2": "fibers I3 + I3",
    "four_a1": "four I2 fibers",
    "a2_a3": "fibers I3 + I4",
    "a3_a3": "fibers I4 + I4",
    "three_a2": "three I3 fibers",
    "a3_a4": "fibers I4 + I5",
    "i9": "one I9 fiber (nine components in a cycle)",
    "e8": "one II* fiber (extended E8 diagram)",
    "index2_multiple_i2": "index 2: the double fiber 2(-K) plus one I2 fiber",
}


def fiber_type(fiber):
    if fiber.multiple:
        return "multiple"
    if any(a > 1 for a in fiber.multiplicities):
        return "II*"
    return f"I{fiber.mu}"


def write(name, doc):
    (OUT / f"{name}.json").write_text(dumps(doc))


def main():
    OUT.mkdir(exist_ok=True)
    for name, cfg in builtin_configs().items():
        doc = cfg.to_dict()
        doc["description"] = DESCRIPTIONS[name]
        for f, item in zip(cfg.fibers, doc["fibers"]):
            item["type"] = fiber_type(f)
        write(name, doc)
    # rejected by the bound on sum(mu_i - 1): I9 plus an extra I2 gives 9
    m1 = HalphenModel(1)
    bad = [cycle_fiber(m1, list(range(1, 10))), cycle_fiber(m1, [1, 2])]
    write("invalid_sigma9", {
        "schema": "lorentz-aut/1", "kind": "fiber_config", "m": 1, "name": "invalid_sigma9",
        "description": "sum of (mu_i - 1) = 9, must be rejected",
        "fibers": [{"components": [[int(c) for c in e] for e in f.components],
                    "multiplicities": list(f.multiplicities), "type": f"I{f.mu}"} for f in bad],
    })


if __name__ == "__main__":
    main()
