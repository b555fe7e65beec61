import os

DEFAULT_CAPS = {
    "ground": 20,       # bases / exchange graph / U(2,4) search
    "sign_search": 16,  # number of Plücker coordinates in a sign search
    "table": 16,        # ground set of a full multiplicity table
    "axioms": 10,
    "gp_r": 10,
    "tu": 12,           # columns in an exhaustive TU check
}


def cap(name):
    """Enumeration cap ``name``; ``ARIMAT_CAP`` overrides every cap at once."""
    override = os.environ.get("ARIMAT_CAP")
    if override:
        return int(override)
    return DEFAULT_CAPS[name]
