#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace aqec {

// Label for one two-level site of the network: either a memory qubit at
// (row, col) of the 3x3 grid, or one of the four relay controllers.
struct SiteLabel {
    enum class Kind : uint8_t { Memory, Relay };
    Kind kind;
    int a = 0;  // Memory: row 1..3.  Relay: index 1..4.
    int b = 0;  // Memory: col 1..3.  Relay: unused.

    static SiteLabel memory(int row, int col) { return {Kind::Memory, row, col}; }
    static SiteLabel relay(int index) { return {Kind::Relay, index, 0}; }

    bool operator==(const SiteLabel&) const = default;
    std::string str() const;
};

// Ordered list of sites; the tensor-product order is the site order, with
// site 0 the most significant bit of a basis index.
class SiteSpace {
public:
    SiteSpace() = default;
    explicit SiteSpace(std::vector<SiteLabel> labels);

    // The 13-site network space: memory qubits (i,j) row-major on sites 0-8,
    // relays R1-R4 on sites 9-12.
    static SiteSpace network();
    // Reduced 5-site model: one column of memory qubits plus one relay pair.
    static SiteSpace column_model();

    int n_sites() const { return static_cast<int>(labels_.size()); }
    int64_t dim() const { return int64_t{1} << labels_.size(); }
    const SiteLabel& label(int site) const { return labels_.at(site); }
    const std::vector<SiteLabel>& labels() const { return labels_; }

    // Index of a label, or -1 if absent.
    int find(const SiteLabel& l) const;
    // Index of a label; throws if absent.
    int index_of(const SiteLabel& l) const;

    bool operator==(const SiteSpace&) const = default;

private:
    std::vector<SiteLabel> labels_;
};

SiteLabel parse_site_label(const std::string& s);

}  // namespace aqec
