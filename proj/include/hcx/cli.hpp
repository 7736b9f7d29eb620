#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hcx {

struct CommandRequest {
  std::string command;
  std::vector<std::string> inputs;
  std::optional<std::string> vector;  // hyperplane normal
  std::optional<std::string> basis;   // subspace basis, rows separated by ';'
  std::optional<std::string> point;
  std::optional<std::string> balls;
  std::optional<std::string> order;   // 1-based clamp order
  std::optional<std::string> tol;
  std::optional<std::string> radius;
  std::optional<std::size_t> rescale_k;
  bool json = false;
  bool witness = false;
  bool fast_minimal_faces = false;
  bool example2 = false;
  std::uint64_t seed = 0;
  std::size_t trials = 10000;
  std::size_t max_iter = 1000000;
  std::size_t jobs = 1;
};

/// 0 property holds, 1 property fails, 2 input error, 3 resource cap or
/// discrepancy.
struct CommandResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

CommandResult dispatch(const CommandRequest& req);

}  // namespace hcx
