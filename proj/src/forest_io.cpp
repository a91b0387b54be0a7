#include <bit>
#include <cstring>
#include <fstream>

#include "sgb/errors.hpp"
#include "sgb/forest.hpp"

namespace sgb {

namespace {

constexpr char kModelMagic[4] = {'S', 'G', 'F', '1'};
constexpr std::uint16_t kModelVersion = 1;

template <typename T>
void put(std::ofstream& out, T v) {
    unsigned char bytes[sizeof(T)];
    std::memcpy(bytes, &v, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) {
        for (std::size_t i = 0; i < sizeof(T) / 2; ++i)
            std::swap(bytes[i], bytes[sizeof(T) - 1 - i]);
    }
    out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <typename T>
T get(std::ifstream& in) {
    unsigned char bytes[sizeof(T)];
    in.read(reinterpret_cast<char*>(bytes), sizeof(T));
    if (!in) throw IoError("model file truncated");
    if constexpr (std::endian::native == std::endian::big) {
        for (std::size_t i = 0; i < sizeof(T) / 2; ++i)
            std::swap(bytes[i], bytes[sizeof(T) - 1 - i]);
    }
    T v;
    std::memcpy(&v, bytes, sizeof(T));
    return v;
}

} // namespace

void save_model(const std::filesystem::path& path, const RandomForestModel& model) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open model file for writing: " + path.string());
    out.write(kModelMagic, 4);
    put<std::uint16_t>(out, kModelVersion);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(model.trees.size()));
    put<std::uint16_t>(out, static_cast<std::uint16_t>(model.n_classes));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(model.feature_count));
    for (const DecisionTree& tree : model.trees) {
        put<std::uint32_t>(out, static_cast<std::uint32_t>(tree.nodes.size()));
        for (const TreeNode& node : tree.nodes) {
            put<std::uint8_t>(out, node.is_leaf() ? 1 : 0);
            if (node.is_leaf()) {
                for (int c = 0; c < model.n_classes; ++c)
                    put<std::uint32_t>(out, node.class_counts[static_cast<std::size_t>(c)]);
            } else {
                put<std::uint32_t>(out, static_cast<std::uint32_t>(node.feature));
                put<double>(out, node.threshold);
                put<std::uint32_t>(out, static_cast<std::uint32_t>(node.left));
                put<std::uint32_t>(out, static_cast<std::uint32_t>(node.right));
            }
        }
    }
    out.flush();
    if (!out) throw IoError("write failure on model file");
}

RandomForestModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open model file: " + path.string());
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kModelMagic, 4) != 0)
        throw IoError("not a forest model file (bad magic)");
    const auto version = get<std::uint16_t>(in);
    if (version > kModelVersion)
        throw IoError("model version newer than supported");

    RandomForestModel model;
    const auto n_trees = get<std::uint32_t>(in);
    model.n_classes = get<std::uint16_t>(in);
    model.feature_count = get<std::uint32_t>(in);
    if (model.n_classes < 1 || model.n_classes > 8)
        throw IoError("model n_classes out of range");
    model.trees.resize(n_trees);
    for (DecisionTree& tree : model.trees) {
        const auto n_nodes = get<std::uint32_t>(in);
        tree.nodes.resize(n_nodes);
        for (TreeNode& node : tree.nodes) {
            const bool leaf = get<std::uint8_t>(in) != 0;
            if (leaf) {
                node.feature = -1;
                node.class_counts.resize(static_cast<std::size_t>(model.n_classes));
                for (int c = 0; c < model.n_classes; ++c)
                    node.class_counts[static_cast<std::size_t>(c)] = get<std::uint32_t>(in);
            } else {
                node.feature = static_cast<std::int32_t>(get<std::uint32_t>(in));
                node.threshold = get<double>(in);
                node.left = static_cast<std::int32_t>(get<std::uint32_t>(in));
                node.right = static_cast<std::int32_t>(get<std::uint32_t>(in));
                if (node.feature < 0 ||
                    static_cast<std::size_t>(node.feature) >= model.feature_count)
                    throw IoError("model node references an invalid feature");
                if (node.left >= static_cast<std::int32_t>(n_nodes) ||
                    node.right >= static_cast<std::int32_t>(n_nodes))
                    throw IoError("model node references an invalid child");
            }
        }
    }
    return model;
}

} // namespace sgb
