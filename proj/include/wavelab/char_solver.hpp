#ifndef WAVELAB_CHAR_SOLVER_HPP
#define WAVELAB_CHAR_SOLVER_HPP

#include <functional>

#include "wavelab/grid.hpp"
#include "wavelab/problem.hpp"

namespace wavelab {

using SpaceTimeFn = std::function<double(double x, double t)>;
using TimeFn = std::function<double(double t)>;

/// Time-stepping rule plus the manufactured-solution hooks. Production
/// runs use the defaults: trapezoidal sources, no forcing, homogeneous
/// boundary closures. The hooks exist only so a known exact solution can
/// be driven through the scheme; scenario files flagged as reproduction
/// runs reject them.
struct StepScheme {
    enum class Rule { TrapezoidalCharacteristic, ExplicitEuler };

    Rule rule = Rule::TrapezoidalCharacteristic;
    SpaceTimeFn forcing_w;   // added to the w transport equation
    SpaceTimeFn forcing_u;   // added to the u transport equation
    TimeFn boundary_u;       // replaces u(1,t)=0 with u(1,t)=boundary_u(t)
    TimeFn boundary_w;       // adds to the left closure: w(0,t)=p*u(0,t)+boundary_w(t)

    bool has_forcing() const { return static_cast<bool>(forcing_w) || static_cast<bool>(forcing_u); }
    bool has_boundary_data() const { return static_cast<bool>(boundary_u) || static_cast<bool>(boundary_w); }
};

/// State at t=0 with w=phi1, u=phi2 after enforcing the boundary values:
/// u_N := 0 and w_0 := p*u_0, overwriting the supplied endpoints.
GridState init_state(const ProblemSpec& spec, const InitialData& data, int n_cells);

/// One characteristic-aligned step of size dt = dx/a. Transport is exact;
/// sources are integrated along the characteristics (trapezoidal by
/// default) and the two-way nodal coupling is solved in closed form.
GridState step(const GridState& state, const ProblemSpec& spec, const StepScheme& scheme = {});

/// March from t=0 until the first step time >= spec.horizon(). Norms are
/// recorded every step, full states every record_every steps plus the
/// final state.
Trajectory solve(const ProblemSpec& spec, const InitialData& data, int n_cells,
                 int record_every = 1, const StepScheme& scheme = {});

/// Solve a RightSmoothing problem by mirroring: reflect the data, solve
/// the mirrored LeftSmoothing problem, reflect every recorded state back.
Trajectory solve_right(const ProblemSpec& right_spec, const InitialData& data, int n_cells,
                       int record_every = 1, const StepScheme& scheme = {});

} // namespace wavelab

#endif
