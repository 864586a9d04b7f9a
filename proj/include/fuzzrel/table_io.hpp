#pragma once

// CSV rendering of alpha-cut tables and membership curves. UTF-8, comma
// separated, header row, LF line endings.
//
// Table columns: alpha,x_L,x_U,v_L,v_U,y_L,y_U[,w_L,w_U],T_L,T_U where x, v,
// y, w are the lambda, theta, mu, beta cuts and T the characteristic.

#include <iosfwd>
#include <span>
#include <string>

#include "fuzzrel/decision.hpp"

namespace fuzzrel {

enum class NumberFormat { Fixed4, Full };

/// "%.4f" for Fixed4, 17 significant digits for Full.
std::string format_number(double v, NumberFormat fmt);

void write_table_csv(std::ostream& out, const AlphaCutTable& table,
                     NumberFormat fmt = NumberFormat::Fixed4);

/// Parses a table written by write_table_csv; the metric is not part of the
/// CSV and is taken from the caller. Throws ParseError, NestingViolation.
AlphaCutTable read_table_csv(std::istream& in, const Metric& metric = Metric::mtbf());

void write_curve_csv(std::ostream& out, const MembershipCurve& curve,
                     NumberFormat fmt = NumberFormat::Fixed4);

/// `samples` evenly spaced z values across the lowest stored cut.
void write_membership_samples_csv(std::ostream& out, const MembershipCurve& curve, int samples,
                                  NumberFormat fmt = NumberFormat::Fixed4);

}  // namespace fuzzrel
