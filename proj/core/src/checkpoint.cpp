#include "antijam/checkpoint.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "antijam/errors.hpp"

namespace antijam {

namespace {

constexpr std::array<char, 8> kMagic{'A', 'J', 'Q', 'N', 'E', 'T', '0', '1'};

template <typename T>
void put(std::vector<std::uint8_t>& out, T value) {
    for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<std::uint8_t>(value >> (8 * i)));
}

class Reader {
public:
    explicit Reader(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}

    template <typename T>
    T get() {
        if (pos_ + sizeof(T) > bytes_.size()) throw StructuralError("checkpoint: truncated");
        T value = 0;
        for (std::size_t i = 0; i < sizeof(T); ++i) value |= static_cast<T>(bytes_[pos_ + i]) << (8 * i);
        pos_ += sizeof(T);
        return value;
    }
    std::size_t remaining() const { return bytes_.size() - pos_; }
    void expect_magic() {
        if (bytes_.size() < kMagic.size() || std::memcmp(bytes_.data(), kMagic.data(), kMagic.size()) != 0)
            throw StructuralError("checkpoint: bad magic");
        pos_ = kMagic.size();
    }

private:
    const std::vector<std::uint8_t>& bytes_;
    std::size_t pos_ = 0;
};

std::array<std::size_t*, 10> arch_fields(QNetArch& a) {
    return {&a.input_rows,     &a.input_cols,   &a.conv1_channels, &a.conv1_kernel, &a.conv1_stride,
            &a.conv2_channels, &a.conv2_kernel, &a.conv2_stride,   &a.fc1_units,    &a.actions};
}

}  // namespace

std::vector<std::uint8_t> encode_checkpoint(const QNetworkParams& params) {
    std::vector<std::uint8_t> out(kMagic.begin(), kMagic.end());
    QNetArch arch = params.arch;
    const auto fields = arch_fields(arch);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(fields.size()));
    for (const std::size_t* f : fields) put<std::uint64_t>(out, *f);
    const auto tensors = params.tensors();
    put<std::uint32_t>(out, static_cast<std::uint32_t>(tensors.size()));
    for (const Tensor* t : tensors) {
        put<std::uint32_t>(out, static_cast<std::uint32_t>(t->shape.size()));
        for (std::size_t d : t->shape) put<std::uint32_t>(out, static_cast<std::uint32_t>(d));
    }
    for (const Tensor* t : tensors)
        for (double v : t->values) put<std::uint64_t>(out, std::bit_cast<std::uint64_t>(v));
    return out;
}

QNetworkParams decode_checkpoint(const std::vector<std::uint8_t>& bytes) {
    Reader in(bytes);
    in.expect_magic();
    QNetArch arch;
    const auto fields = arch_fields(arch);
    if (in.get<std::uint32_t>() != fields.size()) throw StructuralError("checkpoint: unexpected architecture header");
    for (std::size_t* f : fields) *f = static_cast<std::size_t>(in.get<std::uint64_t>());

    QNetworkParams params;
    try {
        params = QNetworkParams::zeros(arch);
    } catch (const ConfigError& e) {
        throw StructuralError(std::string("checkpoint: invalid architecture (") + e.what() + ")");
    }
    auto tensors = params.tensors();
    if (in.get<std::uint32_t>() != tensors.size()) throw StructuralError("checkpoint: unexpected tensor count");
    for (std::size_t i = 0; i < tensors.size(); ++i) {
        const auto rank = in.get<std::uint32_t>();
        std::vector<std::size_t> shape(rank);
        for (auto& d : shape) d = in.get<std::uint32_t>();
        if (shape != tensors[i]->shape)
            throw StructuralError(std::string("checkpoint: shape mismatch for ") +
                                  QNetworkParams::tensor_names()[i]);
    }
    if (in.remaining() != params.parameter_count() * sizeof(double))
        throw StructuralError("checkpoint: payload size does not match header");
    for (Tensor* t : tensors)
        for (double& v : t->values) v = std::bit_cast<double>(in.get<std::uint64_t>());
    return params;
}

void save_checkpoint(const QNetworkParams& params, const std::filesystem::path& path) {
    const auto bytes = encode_checkpoint(params);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open checkpoint for writing: " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("failed writing checkpoint: " + path.string());
}

QNetworkParams load_checkpoint(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open checkpoint: " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return decode_checkpoint(bytes);
}

}  // namespace antijam
