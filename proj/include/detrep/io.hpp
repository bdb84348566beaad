#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "detrep/mep.hpp"
#include "detrep/transform.hpp"
#include "detrep/verify.hpp"

namespace detrep {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Text polynomial format: a "degree n" header followed by one term per
/// line, "i j re [im]" for the coefficient of x^i y^j. Blank lines and lines
/// starting with '#' are ignored; terms with i + j > n are rejected.
BivariatePoly read_poly(std::istream& in);
BivariatePoly read_poly_file(const std::string& path);
void write_poly(std::ostream& out, const BivariatePoly& p);
std::string poly_to_text(const BivariatePoly& p);
BivariatePoly poly_from_text(const std::string& text);

nlohmann::json to_json(const PencilRep& rep);
PencilRep pencil_from_json(const nlohmann::json& j);
nlohmann::json to_json(const QualityReport& report);
nlohmann::json to_json(const RootSet& roots);
nlohmann::json to_json(const NormalizationRecord& rec);

/// Plain-text matrix dump of A, B and C for human inspection.
std::string format_pencil(const PencilRep& rep);

/// x_re,x_im,y_re,y_im,res_p,res_q rows with a header line.
std::string roots_to_csv(const RootSet& roots);

}  // namespace detrep
