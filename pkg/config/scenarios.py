"""config/scenarios.py - Named scenario presets (used by --preset and the acceptance tests)."""

UNIT_BOUNDS = [-1.125, 1.125, -1.125, 1.125]

PRESETS = {
    # Powers z^2, z^3 on the closed unit disc: CR is the origin plus the unit circle.
    "unit_disc_powers": {
        "name": "unit_disc_powers", "bounds": UNIT_BOUNDS, "membership": "disc",
        "generators": ["z^2", "z^3"], "abelian_claimed": True, "depth": 9,
        "eps_schedule": [0.1, 0.05, 0.02], "g_schedule": "all:2", "L": 3, "alpha0": [0],
        "m_max": 64, "depth_m": 8,
        "trapping_candidates": [{"kind": "whole", "label": "whole grid", "h": [0]},
                                {"kind": "annulus", "inner": 0.5, "outer": 0.9}],
        "sublevel_radii": [0.3, 0.5, 0.7],
    },
    "unit_disc_primes": {
        "name": "unit_disc_primes", "bounds": UNIT_BOUNDS, "membership": "disc",
        "generators": ["z^2", "z^3", "z^5"], "abelian_claimed": True, "depth": 8,
        "eps_schedule": [0.1, 0.05, 0.02], "g_schedule": "all:1", "L": 2, "alpha0": [0, 1],
        "trapping_candidates": [{"kind": "whole", "label": "whole grid", "h": [0]}],
        "sublevel_radii": [0.5],
    },
    "half_contraction": {
        "name": "half_contraction", "bounds": UNIT_BOUNDS, "membership": "disc",
        "generators": ["0.5*z"], "abelian_claimed": True, "depth": 7,
        "eps_schedule": [0.1, 0.05], "g_schedule": "all:2", "L": 3, "alpha0": [0],
        "trapping_candidates": [{"kind": "whole", "label": "whole grid", "h": [0]}],
        "sublevel_radii": [0.5],
    },
    "tiny_disc": {
        "name": "tiny_disc", "bounds": UNIT_BOUNDS, "membership": "disc",
        "generators": ["z^2", "z^3"], "abelian_claimed": True, "depth": 4,
        "eps_schedule": [0.2, 0.1], "g_schedule": "all:1", "L": 2, "alpha0": [0], "m_max": 16, "depth_m": 4,
        "trapping_candidates": [{"kind": "whole", "label": "whole grid", "h": [0]}],
        "sublevel_radii": [0.5], "reachable_seeds": [[0.0, 0.0]], "transitivity_budget": 2,
    },
}
