#pragma once

#include "besov/coeffs.hpp"
#include "besov/grid.hpp"
#include "besov/normest.hpp"
#include "besov/seqspace.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace besov {

// Shortest decimal that round-trips the double.
std::string format_real(double v);

// Lines starting with '#' carry provenance and are skipped by the readers.
void write_comment_header(std::ostream& os, const std::vector<std::string>& lines);

// level,start,length,value
void write_sequence_csv(std::ostream& os, const DyadicSequence& seq);
DyadicSequence read_sequence_csv(std::istream& is);

// beta1..betaN,nu,m1..mN,value
void write_coeffs_csv(std::ostream& os, const QuarkCoeffs& coeffs);
QuarkCoeffs read_coeffs_csv(std::istream& is);

// Comment lines "# level=J", "# lower=a,b", "# upper=c,d", then a "value" column in row-major order.
void write_grid_csv(std::ostream& os, const GridFunction& g);
GridFunction read_grid_csv(std::istream& is);

std::string norm_report_json(const NormReport& rep, const std::vector<std::pair<std::string, std::string>>& config);
void write_norm_report_csv(std::ostream& os, const NormReport& rep);

} // namespace besov
