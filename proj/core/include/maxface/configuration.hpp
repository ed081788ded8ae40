#pragma once

#include <span>
#include <string>
#include <vector>

#include "maxface/numeric.hpp"

namespace maxface {

/// The neck positions p_{k,1..n_k} of one layer. Nonempty, pairwise distinct.
class Layer {
   public:
    explicit Layer(std::vector<Complex> points, double min_separation = TolerancePolicy{}.zero_abs);

    std::span<const Complex> points() const { return points_; }
    int size() const { return static_cast<int>(points_.size()); }
    const Complex& operator[](int i) const { return points_[static_cast<std::size_t>(i)]; }
    /// c_k = 1/n_k
    double weight() const { return 1.0 / static_cast<double>(points_.size()); }
    Complex centroid() const;
    Layer translated(Complex shift) const;

   private:
    std::vector<Complex> points_;
};

/// Minimum distance between any point of `a` and any point of `b`.
double min_separation(const Layer& a, const Layer& b);

/// Layers k = 0..h-1 of a finite configuration of height h plus the
/// translation C = p_{h,1} - p_{0,1}. Layer 0 holds a single neck and the
/// closing layer h is {p_{0,1} + C}.
class FiniteBlock {
   public:
    FiniteBlock(std::vector<Layer> layers, Complex translation,
                double min_separation = TolerancePolicy{}.zero_abs);

    int height() const { return static_cast<int>(layers_.size()); }
    std::span<const Layer> layers() const { return layers_; }
    const Layer& layer(int k) const;
    Complex translation() const { return translation_; }
    Complex opening_point() const { return layers_.front()[0]; }
    Layer closing_layer() const { return Layer({opening_point() + translation_}); }

   private:
    std::vector<Layer> layers_;
    Complex translation_;
};

/// Doubly infinite stack with p_{k+T,i} = p_{k,i} + C, T = block height.
class PeriodicConfiguration {
   public:
    explicit PeriodicConfiguration(FiniteBlock block) : block_(std::move(block)) {}

    const FiniteBlock& block() const { return block_; }
    int period() const { return block_.height(); }
    Complex translation() const { return block_.translation(); }

    Layer layer_at(int k) const;
    int neck_count(int k) const;
    double weight(int k) const { return 1.0 / neck_count(k); }
    /// p_{k,i}; i is the 1-based neck index.
    Complex point(int k, int i) const;

   private:
    FiniteBlock block_;
};

inline Layer layer_at(const PeriodicConfiguration& config, int k) { return config.layer_at(k); }

/// One period of the (l, u) encoding: l[k-1] = l_k and u[k-1] = (u_{k,2}, ..., u_{k,n_k})
/// for k = 1..T. u_{k,1} = 0 is implicit; u[T-1] is always empty.
struct UCoordinates {
    std::vector<Complex> l;
    std::vector<std::vector<Complex>> u;

    /// Flattened (l_1, u_{1,2}, ..., l_2, ...) ordering.
    std::vector<Complex> flattened() const;
};

UCoordinates u_coords_from_points(const PeriodicConfiguration& config);
/// Rebuilds the configuration with p_{0,1} = gauge.
PeriodicConfiguration points_from_u(const UCoordinates& u, Complex gauge);

/// A finite stack of layers built from blocks; layers() includes the final closing layer.
struct WindowedConfiguration {
    std::vector<FiniteBlock> blocks;
    std::vector<Layer> layers;
    /// Index into `layers` where each block starts.
    std::vector<int> block_offsets;
};

/// p-space stacking: each block is translated so that its opening point lands
/// on the previous block's closing point.
WindowedConfiguration concat_blocks(std::span<const FiniteBlock> blocks,
                                    double min_separation = TolerancePolicy{}.zero_abs);
WindowedConfiguration repeat_block(const FiniteBlock& block, int copies,
                                   double min_separation = TolerancePolicy{}.zero_abs);

struct ConcatRuleReport {
    int m_first = 0;
    int m_last = 0;
    /// Layers k = m_first*h .. (m_last+1)*h reconstructed from the sign rule.
    WindowedConfiguration rule;
    /// Same window from p-space stacking.
    WindowedConfiguration reference;
    std::vector<double> layer_deviation;
    double max_deviation = 0.0;
    /// l_k for k = m_first*h+1 .. (m_last+1)*h as produced by the rule.
    std::vector<Complex> l_sequence;
    std::vector<std::vector<Complex>> u_sequence;
};

/// Applies the parity sign rule for l and u over m in [m_first, m_last]
/// and compares against p-space stacking of the same window.
ConcatRuleReport concat_paper_rule(const FiniteBlock& block, int m_first, int m_last);

struct Theorem1Report {
    bool bounded_neck_counts = true;
    int max_neck_count = 0;
    bool finite_u_values = true;
    std::vector<Complex> u_values;
    bool centroid_condition = true;
    std::vector<int> failing_layers;
    std::vector<Complex> centroids;  ///< k = 0..T
    std::string note;

    bool all_pass() const { return bounded_neck_counts && finite_u_values && centroid_condition; }
};

Theorem1Report theorem1_hypotheses(const PeriodicConfiguration& config, const TolerancePolicy& tol = {});

}  // namespace maxface
