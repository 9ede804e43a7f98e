#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "toral/certificate.hpp"

namespace toral::cli {

enum ExitCode { Ok = 0, UnknownCommand = 2, InputError = 3, Inconclusive = 4, Internal = 5 };

/// Runs one command; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct PlotRow {
  double theta, phi;
  int branch;
};
/// Torus points of Z_p: curve samples on toral components, isolated points otherwise.
std::vector<PlotRow> plot_rows(const MultiPoly& p, int samples);
void write_csv(const std::vector<PlotRow>& rows, std::ostream& out, int digits);

/// Every certificate object found anywhere inside j, with its replay result.
std::vector<VerifyResult> verify_all(const json& j);

}  // namespace toral::cli
