#pragma once

#include <filesystem>

#include "solq/soliton/model.hpp"

namespace solq::soliton {

// Profile CSV with header r,f,g plus a flat key = value sidecar at
// <path>.meta carrying ell0, lambda, omega, c2, norm, nu, B.
void save_profile(const RadialProfile& profile, const ModelParams& params,
                  const std::filesystem::path& csv_path);

struct LoadedProfile {
    RadialProfile profile;
    ModelParams params;
};

LoadedProfile load_profile(const std::filesystem::path& csv_path);

} // namespace solq::soliton
