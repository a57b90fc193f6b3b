#pragma once

#include <string>

#include "alcove/root_system.hpp"

namespace alcove {

// The walk models with published closed-form constants: family plus step set.
// "Standard" walks step by the weights of the vector representation,
// "Diagonal" by a minuscule/spin orbit, and the B-family standard walk is a
// path model (orbit segments with wall dips) rather than a lattice walk.
enum class WalkModel {
    AStandard,
    ADiagonal,
    CStandard,
    DStandard,
    DDiagonal,
    BStandardPath,
    BDiagonal,
};

WalkModel walk_model(Family family, const std::string& steps);
std::string walk_model_name(WalkModel model);

// Constants in the n-step asymptotics  count(x -> y in n steps) ~
// period * growth^n * boundary_x * boundary_y * C  along n = residue mod
// period.  boundary_x carries the start factor, boundary_y the end factor.
struct WalkConstants {
    double growth = 0.0;
    double boundary_x = 0.0;
    double boundary_y = 0.0;
    int period = 1;
    int residue = 0;
};

// Constants evaluated from the published display formulas, verbatim.
WalkConstants closed_form_constants(const RootSystem& rs, WalkModel model, long long k,
                                    const Weight& x, const Weight& y);

// The same constants recomputed from the engine's own primitives
// (discretized characters and the Weyl sine product).
WalkConstants reference_constants(const RootSystem& rs, WalkModel model, long long k,
                                  const Weight& x, const Weight& y);

// Irreducible components of the model's step representation, in fundamental
// coordinates; trivial components appear as zero weights.  The reference
// growth rate is the sum of their discretized dimensions.
std::vector<Weight> walk_model_gammas(const RootSystem& rs, WalkModel model);

} // namespace alcove
