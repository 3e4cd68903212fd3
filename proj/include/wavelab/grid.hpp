#ifndef WAVELAB_GRID_HPP
#define WAVELAB_GRID_HPP

#include <vector>

namespace wavelab {

/// One time level of the Riemann pair on a uniform grid of n_cells cells
/// (n_cells+1 nodes). The time step is always dx/a; it is derived where a
/// is in scope, never stored.
struct GridState {
    int n_cells = 0;
    double t = 0.0;
    std::vector<double> w;
    std::vector<double> u;

    double dx() const { return 1.0 / n_cells; }
};

struct NormRecord {
    double t = 0.0;
    double w_l2 = 0.0;
    double u_l2 = 0.0;
    double w_sup = 0.0;
    double u_sup = 0.0;
};

/// Norms of the originating data, kept with the trajectory so decay and
/// growth fits can normalize without re-deriving them.
struct DataNorms {
    double w0_h1 = 0.0;
    double w1_l2 = 0.0;
    double phi1_l2 = 0.0;
    double phi2_l2 = 0.0;
};

struct Trajectory {
    int n_cells = 0;
    double a = 1.0;
    int record_every = 1;
    std::vector<NormRecord> norms;   // one per step, including t=0
    std::vector<GridState> states;   // every record_every-th step; final state always present
    DataNorms data_norms;

    double dt() const { return 1.0 / (n_cells * a); }
    const GridState& final_state() const { return states.back(); }
};

} // namespace wavelab

#endif
