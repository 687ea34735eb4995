#include "aqec/site_space.hpp"

#include <stdexcept>

namespace aqec {

std::string SiteLabel::str() const {
    if (kind == Kind::Memory)
        return "Q" + std::to_string(a) + std::to_string(b);
    return "R" + std::to_string(a);
}

SiteSpace::SiteSpace(std::vector<SiteLabel> labels) : labels_(std::move(labels)) {
    if (labels_.size() > 30)
        throw std::invalid_argument("SiteSpace: too many sites");
    for (size_t i = 0; i < labels_.size(); ++i)
        for (size_t j = i + 1; j < labels_.size(); ++j)
            if (labels_[i] == labels_[j])
                throw std::invalid_argument("SiteSpace: duplicate site label " + labels_[i].str());
}

SiteSpace SiteSpace::network() {
    std::vector<SiteLabel> l;
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            l.push_back(SiteLabel::memory(i, j));
    for (int k = 1; k <= 4; ++k)
        l.push_back(SiteLabel::relay(k));
    return SiteSpace(std::move(l));
}

SiteSpace SiteSpace::column_model() {
    std::vector<SiteLabel> l;
    for (int i = 1; i <= 3; ++i)
        l.push_back(SiteLabel::memory(i, 1));
    l.push_back(SiteLabel::relay(1));
    l.push_back(SiteLabel::relay(2));
    return SiteSpace(std::move(l));
}

int SiteSpace::find(const SiteLabel& l) const {
    for (size_t i = 0; i < labels_.size(); ++i)
        if (labels_[i] == l) return static_cast<int>(i);
    return -1;
}

int SiteSpace::index_of(const SiteLabel& l) const {
    int i = find(l);
    if (i < 0)
        throw std::out_of_range("SiteSpace: site " + l.str() + " not in space");
    return i;
}

SiteLabel parse_site_label(const std::string& s) {
    if (s.size() == 3 && (s[0] == 'Q' || s[0] == 'q'))
        return SiteLabel::memory(s[1] - '0', s[2] - '0');
    if (s.size() == 2 && (s[0] == 'R' || s[0] == 'r'))
        return SiteLabel::relay(s[1] - '0');
    throw std::invalid_argument("unrecognized site label '" + s + "'");
}

}  // namespace aqec
