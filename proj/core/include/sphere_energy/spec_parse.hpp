#pragma once

#include <string>

#include "sphere_energy/gegenbauer.hpp"
#include "sphere_energy/kernels.hpp"
#include "sphere_energy/measures.hpp"

namespace sphere_energy {

// Kernel specifications come in two shapes.
//
// Compact: NAME[POWER][:key=value,...] — e.g. "A2:k=3", "V1:k=2", "frame",
// "Q:k=4,l=2", "A1.5:k=3".  NAME is A, V, frame or Q; POWER is the
// exponent s (default 2 for A/V); recognised keys are k, l, d and
// singular=0/1.
//
// JSON: {"kind":"A","k":3,"s":2}, {"kind":"V",...}, {"kind":"frame"},
// {"kind":"Q","k":4,"l":2}, {"kind":"S","m":1,"i":0,"j":0},
// {"kind":"S-trace","blocks":[{"m":0,"entries":[[...]]},...]}, composed
// with {"sum":[...]}, {"product":[...]}, {"scale":{"c":2,"of":...}},
// {"add_constant":{"c":1,"of":...}},
// {"lift":{"n":4,"perms":[[2,3]],"of":...}}, {"symmetrize":...}.
//
// `d` is the ambient dimension the kernel is built for; a "d" given inside
// the spec must agree with it.
MultiKernel parse_kernel(const std::string& spec, int d);

// Measure specifications: named compact form "sigma:3", "onb:4",
// "simplex:3", "pair:3", "cross:4" (name:dimension), or JSON
// {"variant":"uniform_sphere","dim":3},
// {"variant":"discrete","dim":2,"atoms":[[...],[...]],"weights":[...]}
// (atoms listed row-per-atom),
// {"variant":"mixture","components":[{"weight":0.5,"spec":{...}},...]}.
MeasureSpec parse_measure(const std::string& spec);

std::string measure_to_json(const MeasureSpec& mu);

// Gegenbauer series as {"d":3,"coeffs":[...]}.
std::string series_to_json(const GegenbauerSeries& series);
GegenbauerSeries series_from_json(const std::string& text);

// Point tuples as {"dim":d,"points":[[...],[...]]} (row per point).
std::string config_to_json(const PointConfig& config);
PointConfig config_from_json(const std::string& text, bool on_sphere = false);

}  // namespace sphere_energy
