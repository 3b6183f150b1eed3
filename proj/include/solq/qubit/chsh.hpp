#pragma once

#include <array>
#include <string>

namespace solq::qubit {

enum class ChshModel { triangle, qm_cosine };

ChshModel chsh_model_from_name(const std::string& name);

struct ChshResult {
    double max_s = 0.0;
    std::array<double, 4> angles{}; // a, a', b, b'
    int resolution = 0;
};

// Maximize |E(a,b) - E(a,b') + E(a',b) + E(a',b')| over the four angles by
// grid scan plus coordinate-wise golden refinement. E(delta) is the triangle
// law or -cos(delta) (the singlet convention, coplanar directions).
ChshResult chsh_scan(ChshModel model, int grid_resolution, unsigned workers = 1);

double chsh_functional(ChshModel model, double a, double ap, double b, double bp);

} // namespace solq::qubit
