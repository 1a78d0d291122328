#pragma once

#include "spdc/core.hpp"

namespace spdc {

// Analytic accidental-coincidence and throughput budgeting for cw vs pulsed
// operation, plus visibility-constrained operating-point selection.

struct AccidentalRatio {
  double ratio = 0.0;         // f_cw / f_pulsed = R_p T_c
  double cw_advantage = 0.0;  // 1 / ratio: cw pump-power headroom
  bool windows_overlap = false;  // R_p T_c > 1: derivation assumption broken
};

AccidentalRatio accidental_ratio(double rep_rate, double coinc_window);

struct BudgetReport {
  AccidentalRatio ratio;
  // accidental components, counts/s
  double multi_pair = 0.0;   // parallel-analyzer floor from the multi-pair model
  double fluorescence = 0.0; // pair click x fluorescence click, both orders
  double dark_cross = 0.0;   // dark click x pair-or-fluorescence click
  double dark_dark = 0.0;    // simultaneous dark clicks
  double dark_total() const { return dark_cross + dark_dark; }
  double accidental_total() const { return multi_pair + fluorescence + dark_total(); }
  // expected throughput, counts/s
  double singles_s = 0.0;
  double singles_i = 0.0;
  double coincidences = 0.0;  // at the orthogonal (C_max) setting
  // operating point
  double target_visibility = 0.0;
  double max_alpha = 0.0;  // largest alpha meeting target_visibility
};

BudgetReport accidental_budget(const SourceParams& params, double v_target = 0.99);

// Largest alpha whose full-model visibility still reaches v_target, with the
// params' (symmetric) efficiency and pair distribution.
double max_alpha(double v_target, const SourceParams& params);

}  // namespace spdc
