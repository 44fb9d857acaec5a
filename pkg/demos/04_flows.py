"""Hamiltonian flows with conservation reporting.

Flows are the one deliberately numeric layer: fixed-step fourth-order
Runge-Kutta in float64.  The trajectory report carries the observed drift of
the Hamiltonian and of every registered Casimir, plus the bivector rank at
sampled trajectory points (constant along any flow)."""

import math

from poissonkit import (
    MultiPoly,
    PolyBivector,
    Q,
    generators,
    hamiltonian_flow,
    lie_poisson,
    sl2,
)

# -- harmonic oscillator --------------------------------------------------------

vs = ("x", "y")
x, y = generators(*vs)
plane = PolyBivector(vs, {(0, 1): MultiPoly.constant(vs, 1)})
f = (x * x + y * y).scale(Q("1/2"))

traj = hamiltonian_flow(plane, f, x0=[1.0, 0.0], dt=1e-3, steps=10_000)
print("final point:", [round(v, 8) for v in traj.points[-1]])
print("exact solution:", [round(math.cos(10.0), 8), round(math.sin(10.0), 8)])
print("energy drift:", traj.f_drift)
print("ranks along the trajectory:", sorted({r for _, r in traj.ranks}))

# -- a linear bivector flow with a conserved Casimir --------------------------------

lp = lie_poisson(sl2())
mu = [MultiPoly.variable(lp.vars, v.name) for v in lp.vars]
K = MultiPoly.zero(lp.vars) + mu[0] ** 2 - mu[1] ** 2 + mu[2] ** 2

traj2 = hamiltonian_flow(lp, MultiPoly.variable(lp.vars, "mu2"),
                         x0=[1.0, 0.5, -0.25], dt=1e-3, steps=10_000,
                         casimirs={"K": K})
print("\nflow of mu2 on sl2*: Casimir drift =", traj2.casimir_drift["K"])
print("mu2 itself drifts by", traj2.f_drift)

# -- a Casimir Hamiltonian is stationary --------------------------------------------

traj3 = hamiltonian_flow(lp, K, x0=[1.0, 0.5, -0.25], dt=1e-2, steps=100)
moved = max(abs(a - b) for p in traj3.points for a, b in zip(p, traj3.points[0]))
print("\nflowing the Casimir moves the point by", moved)
