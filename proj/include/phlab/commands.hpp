#pragma once

#include <string>
#include <vector>

#include "phlab/config.hpp"

namespace phlab {

// Exit-code contract shared by every command:
//   0 = all checks pass, 2 = a verification failed, 1 = config/runtime error
// (errors are reported by throwing; the CLI maps them to 1).
int cmd_foliations(const Config& cfg);
int cmd_certificate(const Config& cfg);
int cmd_sweep(const Config& cfg, const std::vector<double>& n_list);
int cmd_center(const Config& cfg);
int cmd_homology(const Config& cfg, std::int64_t k);
int cmd_da_verify(const Config& cfg);
int cmd_all(const Config& cfg);

// The dyadic N list used by `all` and as the sweep default.
std::vector<double> default_sweep_list();

}  // namespace phlab
