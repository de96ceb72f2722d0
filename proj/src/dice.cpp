#include "labelnoise/dice.hpp"

#include "labelnoise/error.hpp"

namespace labelnoise {

namespace {

std::string dims(const Mask& m) {
    return std::to_string(m.width()) + "x" + std::to_string(m.height());
}

void require_aligned(const VolumeDataset& a, const VolumeDataset& b) {
    if (!a.aligned_with(b)) {
        throw AlignmentError("datasets are not aligned: " + std::to_string(a.size()) + " slices " +
                             std::to_string(a.width()) + "x" + std::to_string(a.height()) + " vs " +
                             std::to_string(b.size()) + " slices " + std::to_string(b.width()) + "x" +
                             std::to_string(b.height()) + " (ids and dimensions must match)");
    }
}

double ratio(std::size_t intersection, std::size_t total) {
    if (total == 0) {
        return 1.0;
    }
    return 2.0 * static_cast<double>(intersection) / static_cast<double>(total);
}

}  // namespace

DiceScore dice(const Mask& a, const Mask& b) {
    if (a.width() != b.width() || a.height() != b.height()) {
        throw ShapeError("dice of masks with different shapes: " + dims(a) + " vs " + dims(b));
    }
    const auto pa = a.data();
    const auto pb = b.data();
    DiceScore s;
    for (std::size_t i = 0; i < pa.size(); ++i) {
        s.size_a += pa[i];
        s.size_b += pb[i];
        s.intersection += pa[i] & pb[i];
    }
    s.value = ratio(s.intersection, s.size_a + s.size_b);
    return s;
}

double mean_slice_dice_at(const VolumeDataset& a, const VolumeDataset& b,
                          std::span<const std::size_t> positions) {
    require_aligned(a, b);
    if (positions.empty()) {
        throw EmptySampleError("mean dice requested over an empty slice sample");
    }
    double sum = 0.0;
    for (const auto i : positions) {
        sum += dice(a.slice(i), b.slice(i)).value;
    }
    return sum / static_cast<double>(positions.size());
}

double mean_slice_dice(const VolumeDataset& a, const VolumeDataset& b,
                       std::span<const std::string> slice_filter) {
    require_aligned(a, b);
    std::vector<std::size_t> positions;
    positions.reserve(slice_filter.size());
    for (const auto& id : slice_filter) {
        positions.push_back(a.index_of(id));
    }
    return mean_slice_dice_at(a, b, positions);
}

double mean_slice_dice(const VolumeDataset& a, const VolumeDataset& b) {
    std::vector<std::size_t> positions(a.size());
    for (std::size_t i = 0; i < positions.size(); ++i) {
        positions[i] = i;
    }
    return mean_slice_dice_at(a, b, positions);
}

double pooled_dice_at(const VolumeDataset& a, const VolumeDataset& b,
                      std::span<const std::size_t> positions) {
    require_aligned(a, b);
    if (positions.empty()) {
        throw EmptySampleError("pooled dice requested over an empty slice sample");
    }
    std::size_t intersection = 0;
    std::size_t total = 0;
    for (const auto i : positions) {
        const auto s = dice(a.slice(i), b.slice(i));
        intersection += s.intersection;
        total += s.size_a + s.size_b;
    }
    return ratio(intersection, total);
}

std::vector<SliceDice> per_slice_dice(const VolumeDataset& a, const VolumeDataset& b) {
    require_aligned(a, b);
    std::vector<SliceDice> rows;
    rows.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        rows.push_back({a.slice_ids()[i], dice(a.slice(i), b.slice(i)).value});
    }
    return rows;
}

}  // namespace labelnoise
