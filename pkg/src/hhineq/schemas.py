"""JSON Schemas for the ``--json`` output of every subcommand.

Every document is ``{"tool_version", "config", "result"}``; ``config`` always
carries a ``digest`` (sha256 of the rest of the config) and ``result`` has a
fixed shape per subcommand.
"""

NUM = {"type": "number"}
NUM_OR_NULL = {"type": ["number", "null"]}
BOOL = {"type": "boolean"}
ESTIMATE = {
    "type": "object",
    "required": ["value", "err"],
    "properties": {"value": NUM, "err": NUM},
    "additionalProperties": False,
}


def _strict(props: dict, optional=()) -> dict:
    return {
        "type": "object",
        "required": [k for k in props if k not in optional],
        "properties": props,
        "additionalProperties": False,
    }


def _envelope(config_props: dict, result: dict) -> dict:
    return {
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        **_strict({
            "tool_version": {"type": "string"},
            "config": {
                "type": "object",
                "required": ["command", "digest", *config_props],
                "properties": {
                    "command": {"type": "string"},
                    "digest": {"type": "string", "pattern": "^[0-9a-f]{64}$"},
                    **config_props,
                },
            },
            "result": result,
        }),
    }


TOLERANCES = {"rel_tol": NUM, "slack_floor": NUM, "shape_tol": NUM, "shape_grid": {"type": "integer"}}

MEANS = _envelope(
    {"a": NUM, "b": NUM, "p": NUM_OR_NULL, "extend": BOOL},
    _strict({"A": NUM, "G": NUM, "H": NUM, "L": NUM, "I": NUM, "Lp": NUM, "p": NUM},
            optional=("Lp", "p")),
)

BOUND_ENTRY = _strict({
    "label": {"enum": ["T1", "T2", "T3", "DA11", "PP12", "PP13", "ADK14"]},
    "q": NUM_OR_NULL,
    "target": {"enum": ["deviation", "trapezoid"]},
    "value": NUM,
    "lhs": NUM,
    "slack": NUM,
    "margin": NUM,
    "holds": BOOL,
    "status": {"enum": ["holds", "violated", "not_applicable"]},
    "precondition": _strict({
        "mode": {"enum": ["convex", "concave"]},
        "grid_size": {"type": "integer"},
        "max_violation": NUM_OR_NULL,
        "passed": BOOL,
    }),
})

HADAMARD = {
    "oneOf": [
        {"type": "null"},
        _strict({
            "midpoint": NUM, "mean": NUM, "endpoints": NUM,
            "shape": {"enum": ["convex", "concave", "neither"]},
            "direction": {"enum": ["forward", "reversed", "none"]},
            "holds": {"type": ["boolean", "null"]},
            "margin": NUM_OR_NULL,
        }),
    ]
}

BOUND = _envelope(
    {"f": {"type": "string"}, "a": NUM, "b": NUM, "q": {"type": "array", "items": NUM},
     "classical": BOOL, **TOLERANCES},
    _strict({
        "f": {"type": "string"},
        "a": NUM,
        "b": NUM,
        "deviation": ESTIMATE,
        "lemma_rhs": ESTIMATE,
        "lemma_residual": NUM,
        "lemma_holds": BOOL,
        "trapezoid_deviation": {"oneOf": [{"type": "null"}, ESTIMATE]},
        "bounds": {"type": "array", "items": BOUND_ENTRY},
        "hadamard": HADAMARD,
    }),
)

PROP_ROW = _strict({
    "k": {"type": "integer", "minimum": 1, "maximum": 9},
    "a": NUM, "b": NUM,
    "n": {"type": ["integer", "null"]},
    "q": NUM_OR_NULL,
    "function": {"type": "string"},
    "lhs_paper": NUM, "lhs_true": NUM, "lhs_true_err": NUM,
    "rhs_paper": NUM, "rhs_generic": NUM,
    "lhs_discrepancy": BOOL, "rhs_discrepancy": BOOL, "holds_generic": BOOL,
})

COUNT = _strict({k: {"type": "integer"} for k in
                 ("cells", "lhs_discrepancy", "rhs_discrepancy", "generic_failures")})

PROPS = _envelope(
    {"a": NUM, "b": NUM, "n": {"type": "integer"}, "q": NUM,
     "k": {"type": "array", "items": {"type": "integer"}}, **TOLERANCES},
    _strict({
        "propositions": {"type": "array", "items": PROP_ROW},
        "counts": {"type": "object", "additionalProperties": COUNT},
    }),
)

VIOLATION = _strict({
    "case": {"type": "integer"}, "f": {"type": "string"}, "a": NUM, "b": NUM,
    "check": {"type": "string"}, "q": NUM_OR_NULL, "lhs": NUM, "bound": NUM,
    "margin": NUM_OR_NULL,
})

VERIFY = _envelope(
    {"seed": {"type": "integer"}, "count": {"type": "integer"},
     "range": {"type": "array", "items": NUM, "minItems": 2, "maxItems": 2},
     "q_list": {"type": "array", "items": NUM}, **TOLERANCES},
    _strict({
        "seed": {"type": ["integer", "null"]},
        "config_digest": {"type": "string"},
        "passed": BOOL,
        "cases": {"type": "integer"},
        "checks": {"type": "integer"},
        "rejected": {"type": "integer"},
        "stats": {"type": "object", "additionalProperties": _strict(
            {"holds": {"type": "integer"}, "violated": {"type": "integer"},
             "not_applicable": {"type": "integer"}})},
        "violations": {"type": "array", "items": VIOLATION},
        "skips": {"type": "array", "items": _strict(
            {"case": {"type": "integer"}, "f": {"type": "string"}, "a": NUM, "b": NUM,
             "reason": {"type": "string"}})},
    }),
)

SCHEMAS = {"means": MEANS, "bound": BOUND, "props": PROPS, "verify": VERIFY}
