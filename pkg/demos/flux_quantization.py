"""Total magnetic flux through the quotient sphere and its quantization.

A constant-density field B on a closed surface carries total flux B * area;
a consistent quantum line bundle needs B * area / (2 pi) to be an integer.
"""

import math

from monopole_lab import NeumannConstants, area_and_flux, build_model_from_roots

print("-- round unit sphere (cubic family): area 4 pi")
constants = NeumannConstants((3.0, 2.0, 1.0))
for B in (0.5, 1.0, 0.77):
    res = area_and_flux(constants, B, 256)
    print(f"B = {B:4}: area = {res['area']:.10f}, flux/2pi = {res['flux_over_2pi']:.10f}, "
          f"nearest integer {res['nearest_integer']} (gap {res['gap']:.2e})")
print(f"4 pi = {4 * math.pi:.10f}; flux/2pi = 2B, so integrality needs half-integer B")

print()
print("-- torus family, roots (3, 2, -1, -4)")
model = build_model_from_roots([3, 2, -1, -4], -1.0)
for n in (128, 256, 512):
    res = area_and_flux(model, 0.5, n)
    print(f"n = {n:4}: area = {res['area']:.12f}  flux/2pi = {res['flux_over_2pi']:.12f}")
print("the area equals 32 pi / |a3| here, so B = 0.5 already sits on an integer flux")

print()
print("-- linearity of the flux in B")
r1 = area_and_flux(model, 0.3, 256)["flux_over_2pi"]
r2 = area_and_flux(model, 0.4, 256)["flux_over_2pi"]
r12 = area_and_flux(model, 0.7, 256)["flux_over_2pi"]
print(f"flux(0.3) + flux(0.4) - flux(0.7) = {r1 + r2 - r12:.3e}")
