#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "hcx/feasibility.hpp"
#include "hcx/injectivity.hpp"
#include "hcx/retraction.hpp"
#include "hcx/twovpi.hpp"

namespace hcx {

using Json = nlohmann::ordered_json;

/// Whole file as a string; InvalidArgument when unreadable.
std::string read_file(const std::string& path);

/// `.sys` format: `dim n`, then rows `c1 .. cn (>=|>|=) rhs`; `#` comments.
/// `=` rows become two `>=` rows.
ConstraintSystem parse_sys(std::string_view text);

/// One ball per line: `c1 .. cn ; r`.
BallFamily parse_balls(std::string_view text);

/// Q JSON. Each of "lower"/"upper" is null or a list whose elements are
/// either atoms `[[w...], b]` (singleton groups) or lists of atoms (groups).
/// Indices are 1-based; rationals may be JSON numbers or strings.
BoxConstraintSet parse_q(std::string_view text, const FeasibilityOptions& opts = {});

std::string rat_json(const Rat& r);
Json vec_json(const RVec& v);
/// 0-based indices shifted to 1-based.
Json index_json(const std::vector<std::size_t>& idx);

Json face_json(const FaceDesc& f);
Json report_json(const InjectivityReport& r);
Json ball_family_json(const BallFamily& fam);
Json ball_check_json(const BallCheck& c);
Json subspace_json(const SubspaceCertificate& cert);
Json path_json(const PathDesc& p);
Json residue_json(const Residue& r);

}  // namespace hcx
