#include "bsid/container.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "bsid/errors.hpp"
#include "bsid/rng.hpp"

namespace bsid {

namespace {

constexpr char kMagic[4] = {'B', 'S', 'I', 'D'};

template <typename T>
void append_le(std::vector<std::uint8_t>& out, T v) {
    static_assert(std::is_integral_v<T>);
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xff));
    }
}

}  // namespace

void ByteWriter::put_u8(std::uint8_t v) { bytes_.push_back(v); }
void ByteWriter::put_u32(std::uint32_t v) { append_le(bytes_, v); }
void ByteWriter::put_u64(std::uint64_t v) { append_le(bytes_, v); }

void ByteWriter::put_f64(double v) { put_u64(std::bit_cast<std::uint64_t>(v)); }

void ByteWriter::put_string(const std::string& s) {
    put_u64(s.size());
    bytes_.insert(bytes_.end(), s.begin(), s.end());
}

void ByteWriter::put_f64_vector(const std::vector<double>& v) {
    put_u64(v.size());
    for (double x : v) put_f64(x);
}

void ByteWriter::put_matrix(const Matrix& m) {
    put_u64(m.rows());
    put_u64(m.cols());
    for (double x : m.flat()) put_f64(x);
}

void ByteReader::need(std::size_t n) const {
    if (pos_ + n > bytes_.size()) {
        throw TruncationError("container payload ends early (offset " + std::to_string(pos_) +
                              ", need " + std::to_string(n) + " bytes)");
    }
}

std::uint8_t ByteReader::get_u8() {
    need(1);
    return bytes_[pos_++];
}

std::uint32_t ByteReader::get_u32() {
    need(4);
    std::uint32_t v = 0;
    for (std::size_t i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes_[pos_++]) << (8 * i);
    return v;
}

std::uint64_t ByteReader::get_u64() {
    need(8);
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes_[pos_++]) << (8 * i);
    return v;
}

double ByteReader::get_f64() { return std::bit_cast<double>(get_u64()); }

std::string ByteReader::get_string() {
    const std::uint64_t n = get_u64();
    need(n);
    std::string s(reinterpret_cast<const char*>(bytes_.data() + pos_), n);
    pos_ += n;
    return s;
}

std::vector<double> ByteReader::get_f64_vector() {
    const std::uint64_t n = get_u64();
    std::vector<double> v;
    v.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) v.push_back(get_f64());
    return v;
}

Matrix ByteReader::get_matrix() {
    const std::uint64_t rows = get_u64();
    const std::uint64_t cols = get_u64();
    need(rows * cols * 8);
    Matrix m(rows, cols);
    for (double& x : m.flat()) x = get_f64();
    return m;
}

std::vector<std::uint8_t> seal_container(PayloadKind kind, std::vector<std::uint8_t> payload) {
    std::vector<std::uint8_t> out;
    out.reserve(payload.size() + 28);
    out.insert(out.end(), kMagic, kMagic + 4);
    append_le(out, kContainerVersion);
    append_le(out, static_cast<std::uint32_t>(kind));
    append_le(out, static_cast<std::uint64_t>(payload.size()));
    append_le(out, fnv1a64(payload.data(), payload.size()));
    out.insert(out.end(), payload.begin(), payload.end());
    return out;
}

std::vector<std::uint8_t> open_container(const std::vector<std::uint8_t>& file_bytes,
                                         PayloadKind expected_kind) {
    if (file_bytes.size() < 28 || std::memcmp(file_bytes.data(), kMagic, 4) != 0) {
        throw DataError("not a recognized artifact container");
    }
    ByteReader header(file_bytes);
    header.get_u32();  // magic, checked above
    const std::uint32_t version = header.get_u32();
    if (version > kContainerVersion) {
        throw VersionError("artifact written by container version " + std::to_string(version) +
                           ", this build reads up to version " +
                           std::to_string(kContainerVersion));
    }
    const std::uint32_t kind = header.get_u32();
    if (kind != static_cast<std::uint32_t>(expected_kind)) {
        throw DataError("artifact holds payload kind " + std::to_string(kind) + ", expected " +
                        std::to_string(static_cast<std::uint32_t>(expected_kind)));
    }
    const std::uint64_t length = header.get_u64();
    const std::uint64_t fingerprint = header.get_u64();
    if (file_bytes.size() < 28 + length) {
        throw TruncationError("artifact file is truncated: header claims " +
                              std::to_string(length) + " payload bytes, " +
                              std::to_string(file_bytes.size() - 28) + " present");
    }
    std::vector<std::uint8_t> payload(file_bytes.begin() + 28,
                                      file_bytes.begin() + 28 + static_cast<long>(length));
    if (fnv1a64(payload.data(), payload.size()) != fingerprint) {
        throw FingerprintError("artifact payload fingerprint mismatch");
    }
    return payload;
}

void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write file: " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<long>(bytes.size()));
    if (!out) throw IoError("short write: " + path);
}

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary | std::ios::ate);
    if (!in) throw IoError("cannot open file: " + path);
    const auto size = in.tellg();
    in.seekg(0);
    std::vector<std::uint8_t> bytes(static_cast<std::size_t>(size));
    in.read(reinterpret_cast<char*>(bytes.data()), size);
    if (!in) throw IoError("short read: " + path);
    return bytes;
}

void put_network(ByteWriter& w, const Network& net) {
    w.put_u64(net.input_width);
    w.put_u64(net.layers.size());
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        const auto& layer = net.layers[l];
        w.put_u64(layer.fan_in());
        w.put_u64(layer.fan_out());
        w.put_u8(static_cast<std::uint8_t>(net.specs[l].activation));
        for (double v : layer.weights.flat()) w.put_f64(v);
        w.put_f64_vector(layer.bias);
    }
}

Network get_network(ByteReader& r) {
    Network net;
    net.input_width = r.get_u64();
    const std::uint64_t n_layers = r.get_u64();
    for (std::uint64_t l = 0; l < n_layers; ++l) {
        const std::uint64_t fan_in = r.get_u64();
        const std::uint64_t fan_out = r.get_u64();
        const auto activation = static_cast<Activation>(r.get_u8());
        Layer layer;
        layer.weights = Matrix(fan_in, fan_out);
        for (double& v : layer.weights.flat()) v = r.get_f64();
        layer.bias = r.get_f64_vector();
        if (layer.bias.size() != fan_out) {
            throw DataError("network payload: bias length does not match layer width");
        }
        net.specs.push_back({fan_out, activation});
        net.layers.push_back(std::move(layer));
    }
    return net;
}

void put_autoencoder(ByteWriter& w, const AutoencoderModel& model) {
    w.put_u64(model.latent_width);
    put_network(w, model.encoder);
    put_network(w, model.decoder);
    w.put_f64_vector(model.history.epoch_loss);
}

AutoencoderModel get_autoencoder(ByteReader& r) {
    AutoencoderModel model;
    model.latent_width = r.get_u64();
    model.encoder = get_network(r);
    model.decoder = get_network(r);
    model.history.epoch_loss = r.get_f64_vector();
    return model;
}

void put_encoding_plan(ByteWriter& w, const EncodingPlan& plan) {
    w.put_string(schema_to_text(plan.schema));
    w.put_u64(plan.scalers.size());
    for (const auto& s : plan.scalers) {
        w.put_f64(s.min);
        w.put_f64(s.max);
    }
}

EncodingPlan get_encoding_plan(ByteReader& r) {
    EncodingPlan plan;
    plan.schema = parse_schema(r.get_string());
    const std::uint64_t n = r.get_u64();
    plan.scalers.resize(n);
    for (auto& s : plan.scalers) {
        s.min = r.get_f64();
        s.max = r.get_f64();
    }
    // Rebuild the layout from the schema.
    const std::size_t nvars = plan.schema.variable_count();
    if (n != nvars) throw DataError("encoding plan payload: scaler count mismatch");
    plan.onehot_offset.assign(nvars, 0);
    plan.onehot_block.assign(nvars, 0);
    plan.label_width = nvars;
    std::size_t offset = 0;
    for (std::size_t v = 0; v < nvars; ++v) {
        const auto& spec = plan.schema.variables[v];
        plan.onehot_block[v] = spec.is_numeric() ? 1 : spec.categories.size();
        plan.onehot_offset[v] = offset;
        offset += plan.onehot_block[v];
    }
    plan.onehot_width = offset;
    return plan;
}

std::string network_to_text(const Network& net) {
    std::ostringstream out;
    out.precision(17);
    out << "input_width " << net.input_width << "\n";
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        const auto& layer = net.layers[l];
        out << "layer " << l << " " << layer.fan_in() << "x" << layer.fan_out() << " "
            << to_string(net.specs[l].activation) << "\n";
        for (std::size_t i = 0; i < layer.fan_in(); ++i) {
            out << "  w" << i << ":";
            for (std::size_t j = 0; j < layer.fan_out(); ++j) out << " " << layer.weights(i, j);
            out << "\n";
        }
        out << "  b:";
        for (double b : layer.bias) out << " " << b;
        out << "\n";
    }
    return out.str();
}

}  // namespace bsid
