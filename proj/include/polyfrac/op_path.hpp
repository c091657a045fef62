#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace polyfrac {

enum class Op : std::uint8_t { A11, Delta };

inline std::string_view op_name(Op op) { return op == Op::A11 ? "A11" : "DELTA"; }

/// Position of a matrix in the inversion recursion tree, as the sequence of
/// operations applied to the root, first operation first.
class OpPath {
public:
    OpPath() = default;
    OpPath(std::initializer_list<Op> ops) : ops_(ops) {}
    explicit OpPath(std::vector<Op> ops) : ops_(std::move(ops)) {}

    [[nodiscard]] OpPath child(Op op) const {
        OpPath p = *this;
        p.ops_.push_back(op);
        return p;
    }
    [[nodiscard]] OpPath parent() const {
        OpPath p = *this;
        if (!p.ops_.empty()) p.ops_.pop_back();
        return p;
    }

    [[nodiscard]] bool empty() const { return ops_.empty(); }
    [[nodiscard]] std::size_t size() const { return ops_.size(); }
    [[nodiscard]] Op back() const { return ops_.back(); }
    [[nodiscard]] Op operator[](std::size_t i) const { return ops_[i]; }
    [[nodiscard]] const std::vector<Op>& ops() const { return ops_; }
    auto begin() const { return ops_.begin(); }
    auto end() const { return ops_.end(); }

    [[nodiscard]] std::size_t delta_count() const {
        std::size_t c = 0;
        for (Op op : ops_) c += op == Op::Delta;
        return c;
    }

    /// A11 operations applied before the first DELTA. They only select a
    /// leading principal block, which then plays the role of the root.
    [[nodiscard]] std::size_t leading_a11_count() const {
        std::size_t c = 0;
        while (c < ops_.size() && ops_[c] == Op::A11) ++c;
        return c;
    }

    [[nodiscard]] bool all_delta() const { return delta_count() == ops_.size(); }

    /// True when an A11 operation follows some DELTA operation.
    [[nodiscard]] bool is_mixed() const {
        bool seen_delta = false;
        for (Op op : ops_) {
            if (op == Op::Delta) seen_delta = true;
            else if (seen_delta) return true;
        }
        return false;
    }

    /// Decomposition of a DELTA-terminated path into the normal form
    /// Delta A11^{m_J} Delta ... Delta A11^{m_1} Delta (applied to the effective root).
    /// Returns m_1..m_J; J is the size of the result.
    [[nodiscard]] std::vector<std::size_t> a11_runs() const {
        std::vector<std::size_t> runs;
        std::size_t i = leading_a11_count();
        if (i == ops_.size()) return runs;
        ++i; // first DELTA
        std::size_t run = 0;
        for (; i < ops_.size(); ++i) {
            if (ops_[i] == Op::A11) {
                ++run;
            } else {
                runs.push_back(run);
                run = 0;
            }
        }
        return runs;
    }

    [[nodiscard]] std::string to_string() const {
        std::string s = "[";
        for (std::size_t i = 0; i < ops_.size(); ++i) {
            if (i) s += ',';
            s += op_name(ops_[i]);
        }
        return s + "]";
    }

    friend bool operator==(const OpPath&, const OpPath&) = default;
    friend auto operator<=>(const OpPath& a, const OpPath& b) { return a.ops_ <=> b.ops_; }

private:
    std::vector<Op> ops_;
};

/// Index window of the root that a recursion node stands for: the node is,
/// up to a scalar, the Schur complement of A[0,start) inside A[0,start+size)
/// restricted to rows/cols [start, start+size).
struct Window {
    std::size_t start = 0;
    std::size_t size = 0;
};

inline Window window_of(const OpPath& path, std::size_t n) {
    Window w{0, n};
    for (Op op : path) {
        w.size /= 2;
        if (op == Op::Delta) w.start += w.size;
    }
    return w;
}

} // namespace polyfrac
