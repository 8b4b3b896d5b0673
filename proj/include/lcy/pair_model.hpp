#pragma once

#include "lcy/lattice.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lcy {

struct ToricModel {
    std::vector<I2> rays;   // m̄_i, counterclockwise
    std::vector<int> blowups; // l_i
};

// Integer coordinates in Pic(Y): coefficients of D̄_3..D̄_n (D̄_1, D̄_2 eliminated
// by the two linear relations) followed by the exceptional classes E_ij.
using DivisorClass = std::vector<i64>;
using WeightVector = std::vector<i64>;

DivisorClass operator+(const DivisorClass& a, const DivisorClass& b);
DivisorClass operator-(const DivisorClass& a, const DivisorClass& b);
DivisorClass operator*(i64 s, const DivisorClass& a);

class LooijengaPair {
  public:
    LooijengaPair() = default;

    int n() const { return static_cast<int>(self_ints_.size()); }
    const std::vector<i64>& self_ints() const { return self_ints_; }
    i64 self_int(int i) const { return self_ints_[static_cast<std::size_t>(mod(i))]; }
    bool has_toric_model() const { return tm_.has_value(); }
    const ToricModel& toric_model() const;
    const std::string& name() const { return name_; }
    void set_name(std::string s) { name_ = std::move(s); }
    int mod(int i) const { return ((i % n()) + n()) % n(); }

    // intersection matrix of the boundary components
    i64 dd(int i, int j) const;
    i64 charge() const;

    // Picard lattice (requires a toric model)
    int pic_rank() const { return static_cast<int>(gram_.size()); }
    int num_exceptional() const { return total_l_; }
    int exc_index(int i, int j) const; // position of E_ij (j 0-based) in a class vector
    DivisorClass zero() const { return DivisorClass(gram_.size(), 0); }
    DivisorClass dbar(int i) const;     // p*D̄_i in normal form
    DivisorClass exc(int i, int j) const; // E_ij, j 0-based
    DivisorClass boundary(int i) const;   // D_i
    i64 intersect(const DivisorClass& a, const DivisorClass& b) const;
    const std::vector<std::vector<i64>>& gram() const { return gram_; }
    i64 dbar_self(int i) const { return dbar_self_[static_cast<std::size_t>(mod(i))]; }
    i64 e_degree(const DivisorClass& c) const;
    WeightVector weight(const DivisorClass& c) const;
    const std::vector<std::vector<std::string>>& labels() const { return labels_; }
    bool custom_labels() const { return custom_labels_; }
    std::string format_class(const DivisorClass& c) const;

    // Pic coordinates in the full basis (D̄_1..D̄_n, E_ij) reduced to normal form.
    DivisorClass reduce(const std::vector<i64>& full) const;

    const std::vector<int>& blowdown_history() const { return history_; }

    friend LooijengaPair build_pair(const std::vector<i64>&, const std::optional<ToricModel>&,
                                    const std::vector<std::vector<std::string>>*);
    friend LooijengaPair toric_blowup(const LooijengaPair&, int);
    friend LooijengaPair toric_blowdown(const LooijengaPair&, int);

  private:
    void init_pic();

    std::vector<i64> self_ints_;
    std::optional<ToricModel> tm_;
    std::vector<i64> dbar_self_;
    std::vector<std::vector<std::string>> labels_;
    bool custom_labels_ = false;
    std::vector<std::vector<i64>> gram_;
    std::vector<std::vector<i64>> dbar_nf_; // normal form of each p*D̄_i
    std::vector<int> exc_offset_;
    int total_l_ = 0;
    std::string name_;
    std::vector<int> history_;
};

// Self-intersections of the toric fan: D̄_i² from m̄_{i-1} + m̄_{i+1} = -D̄_i² m̄_i.
std::vector<i64> toric_self_ints(const std::vector<I2>& rays);
void validate_fan(const std::vector<I2>& rays);

// self_ints may be empty when a toric model is given (they are derived from it).
LooijengaPair build_pair(const std::vector<i64>& self_ints, const std::optional<ToricModel>& tm,
                         const std::vector<std::vector<std::string>>* labels = nullptr);
LooijengaPair pair_from_self_ints(const std::vector<i64>& self_ints);
LooijengaPair pair_from_fan(const std::vector<I2>& rays, const std::vector<int>& l);

i64 charge_of(const std::vector<i64>& self_ints);

enum class PositivityStatus { Positive, NotPositive, BoundExhausted };

struct PositivityResult {
    PositivityStatus status = PositivityStatus::NotPositive;
    std::vector<i64> witness;    // minimal witness, or an LP-derived one on exhaustion
    std::vector<Q> lp_point;     // rational feasible point with all entries >= 1
};

struct PositivityOptions {
    i64 search_cap = 64;
};

std::vector<std::vector<i64>> boundary_matrix(const std::vector<i64>& self_ints);
PositivityResult is_positive(const std::vector<i64>& self_ints, PositivityOptions opt = {});
inline PositivityResult is_positive(const LooijengaPair& p, PositivityOptions opt = {}) {
    return is_positive(p.self_ints(), opt);
}

// W.D_k for W = sum a_i D_i
std::vector<i64> divisor_degrees(const std::vector<i64>& self_ints, const std::vector<i64>& a);

LooijengaPair toric_blowup(const LooijengaPair& p, int node);
LooijengaPair toric_blowdown(const LooijengaPair& p, int i);

enum class CanonicalTag { ParallelConfiguration, DP1 };

struct CanonicalResult {
    LooijengaPair pair;
    CanonicalTag tag;
    std::vector<int> steps; // indices blown down, 0-based, in order
};
CanonicalResult blowdown_to_canonical(const LooijengaPair& p);

// Weight of a boundary point b v_i + c v_{i+1}.
WeightVector point_weight(int n, int cone, i64 b, i64 c);

} // namespace lcy
