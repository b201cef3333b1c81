#pragma once

#include <stdexcept>
#include <vector>

namespace layerfv {

/// Uniform Cartesian control-volume mesh of a doubly periodic channel.
/// Interior cells are indexed 1..M, 1..N, 1..L with one ghost layer on
/// every side (index 0 and M+1 etc).  Cell K_{i,j,k} spans
/// [(i-1)dx, i dx] x [(j-1)dy, j dy] x [(k-1)dz, k dz], so face x_{i+1/2}
/// sits at i*dx and the cell center at (i-1/2)dx.
struct GridSpec {
    int M = 0, N = 0, L = 0;
    double Lx = 1.0, Ly = 1.0, Lz = 1.0;
    double dx = 0.0, dy = 0.0, dz = 0.0;

    double cell_volume() const { return dx * dy * dz; }
    double x_center(int i) const { return (i - 0.5) * dx; }
    double y_center(int j) const { return (j - 0.5) * dy; }
    double z_center(int k) const { return (k - 0.5) * dz; }
    double x_face(int i) const { return i * dx; }
    double y_face(int j) const { return j * dy; }
    double z_face(int k) const { return k * dz; }

    /// Periodic wrap of an x interior index (1..M); used for stencils that
    /// reach two cells past the seam, where the single ghost layer ends.
    int wrap_x(int i) const { return ((i - 1) % M + M) % M + 1; }
    int wrap_y(int j) const { return ((j - 1) % N + N) % N + 1; }
};

/// Builds the unit periodic cell (0,1)^2 x (0,1) used by the channel solver.
GridSpec build_grid(int M, int N, int L);
/// Same mesh machinery over an arbitrary box (periodic in x,y, walls in z).
GridSpec build_grid(int M, int N, int L, double Lx, double Ly, double Lz);

/// Cell-centered scalar with one ghost layer on each side.
class CellField {
  public:
    CellField() = default;
    explicit CellField(const GridSpec& g)
        : g_(g), sx_((g.N + 2) * (g.L + 2)), sy_(g.L + 2),
          data_((g.M + 2) * (g.N + 2) * (g.L + 2), 0.0) {}

    double& operator()(int i, int j, int k) { return data_[i * sx_ + j * sy_ + k]; }
    double operator()(int i, int j, int k) const { return data_[i * sx_ + j * sy_ + k]; }

    const GridSpec& grid() const { return g_; }
    std::vector<double>& raw() { return data_; }
    const std::vector<double>& raw() const { return data_; }

    void fill(double c) { data_.assign(data_.size(), c); }
    double interior_mean() const;
    double interior_max_abs() const;
    bool interior_finite() const;

  private:
    GridSpec g_;
    int sx_ = 0, sy_ = 0;
    std::vector<double> data_;
};

/// Three cell-centered components sharing one GridSpec.
struct VectorField {
    CellField u, v, w;

    VectorField() = default;
    explicit VectorField(const GridSpec& g) : u(g), v(g), w(g) {}
    const GridSpec& grid() const { return u.grid(); }

    CellField& component(int c) { return c == 0 ? u : (c == 1 ? v : w); }
    const CellField& component(int c) const { return c == 0 ? u : (c == 1 ? v : w); }
};

/// Face-normal velocity fluxes.  Fu lives on x-faces indexed 0..M (face i at
/// x = i*dx, faces 0 and M identified by periodicity), Fv on y-faces 0..N,
/// Fw on z-faces 0..L where faces 0 and L are the walls and carry exactly 0.
class FaceFluxes {
  public:
    FaceFluxes() = default;
    explicit FaceFluxes(const GridSpec& g)
        : g_(g), fu_((g.M + 1) * g.N * g.L, 0.0), fv_(g.M * (g.N + 1) * g.L, 0.0),
          fw_(g.M * g.N * (g.L + 1), 0.0) {}

    // face index f in 0..M; cell indices j in 1..N, k in 1..L
    double& Fu(int f, int j, int k) { return fu_[(f * g_.N + (j - 1)) * g_.L + (k - 1)]; }
    double Fu(int f, int j, int k) const { return fu_[(f * g_.N + (j - 1)) * g_.L + (k - 1)]; }
    double& Fv(int i, int f, int k) { return fv_[((i - 1) * (g_.N + 1) + f) * g_.L + (k - 1)]; }
    double Fv(int i, int f, int k) const { return fv_[((i - 1) * (g_.N + 1) + f) * g_.L + (k - 1)]; }
    double& Fw(int i, int j, int f) { return fw_[((i - 1) * g_.N + (j - 1)) * (g_.L + 1) + f]; }
    double Fw(int i, int j, int f) const { return fw_[((i - 1) * g_.N + (j - 1)) * (g_.L + 1) + f]; }

    const GridSpec& grid() const { return g_; }
    bool finite() const;

  private:
    GridSpec g_;
    std::vector<double> fu_, fv_, fw_;
};

/// Copies the periodic images into the x and y ghost layers.
void fill_periodic_ghosts(CellField& f);

/// Homogeneous Dirichlet walls by midpoint average: v_{i,j,0} = -v_{i,j,1},
/// v_{i,j,L+1} = -v_{i,j,L}, all three components.
void fill_velocity_wall_ghosts(VectorField& v);

/// Second-order compact extrapolation for the pressure wall ghosts:
/// p_0 = (5/2)p_1 - 2 p_2 + (1/2)p_3 and mirrored at the top.
void fill_pressure_wall_ghosts(CellField& p);

} // namespace layerfv
