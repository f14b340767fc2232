// SPDX-License-Identifier: Apache-2.0
//
// chanhard - massive MIMO channel hardening and reliability analysis toolkit
// Copyright (C) 2026 chanhard developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "chanhard/cht_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include <json.hpp>

static_assert(std::endian::native == std::endian::little,
              "CHT I/O assumes a little-endian host");

namespace chanhard {

namespace {

constexpr char kMagic[4] = {'C', 'H', 'T', '1'};

using json = nlohmann::json;

json layout_to_json(const ArrayLayout &layout)
{
    json antennas = json::array();
    for (const auto &el : layout.antennas) {
        antennas.push_back({{"index", el.index},
                            {"position_m", {el.position_m[0], el.position_m[1], el.position_m[2]}},
                            {"orientation", {el.orientation[0], el.orientation[1], el.orientation[2]}},
                            {"polarization", to_string(el.polarization)}});
    }
    return json{{"kind", to_string(layout.kind)}, {"antennas", std::move(antennas)}};
}

ArrayLayout layout_from_json(const json &j)
{
    ArrayLayout layout;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "co-located")
        layout.kind = ArrayKind::CoLocated;
    else if (kind == "distributed")
        layout.kind = ArrayKind::Distributed;
    else
        throw ChtError(ChtStatus::InvalidHeader, "unknown layout kind '" + kind + "'");

    for (const auto &a : j.at("antennas")) {
        AntennaElement el;
        el.index = a.at("index").get<std::size_t>();
        const auto &pos = a.at("position_m");
        const auto &ori = a.at("orientation");
        for (int i = 0; i < 3; ++i) {
            el.position_m[static_cast<std::size_t>(i)] = pos.at(i).get<double>();
            el.orientation[static_cast<std::size_t>(i)] = ori.at(i).get<double>();
        }
        const std::string pol = a.at("polarization").get<std::string>();
        if (pol == "V")
            el.polarization = Polarization::Vertical;
        else if (pol == "H")
            el.polarization = Polarization::Horizontal;
        else
            throw ChtError(ChtStatus::InvalidHeader, "unknown polarization '" + pol + "'");
        layout.antennas.push_back(el);
    }
    return layout;
}

} // namespace

ChannelTensor read_cht(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DataError("cannot open '" + path.string() + "' for reading");

    char magic[4];
    if (!in.read(magic, 4))
        throw ChtError(ChtStatus::InvalidHeader, "file shorter than the magic");
    if (std::memcmp(magic, kMagic, 4) != 0)
        throw ChtError(ChtStatus::InvalidHeader, "magic/version mismatch");

    std::uint32_t header_len = 0;
    if (!in.read(reinterpret_cast<char *>(&header_len), sizeof(header_len)))
        throw ChtError(ChtStatus::InvalidHeader, "missing header length");
    if (header_len > 64u * 1024u * 1024u)
        throw ChtError(ChtStatus::InvalidHeader, "implausible header length");

    std::string header_text(header_len, '\0');
    if (!in.read(header_text.data(), header_len))
        throw ChtError(ChtStatus::InvalidHeader, "header shorter than declared");

    json header;
    try {
        header = json::parse(header_text);
    } catch (const json::exception &e) {
        throw ChtError(ChtStatus::InvalidHeader, std::string("header JSON: ") + e.what());
    }

    ChannelTensor t;
    try {
        t.n_time = header.at("n_time").get<std::size_t>();
        t.n_freq = header.at("n_freq").get<std::size_t>();
        t.n_ant = header.at("n_ant").get<std::size_t>();
        t.carrier_freq_hz = header.at("carrier_freq_hz").get<double>();
        t.bandwidth_hz = header.at("bandwidth_hz").get<double>();
        t.rep_rate_hz = header.at("rep_rate_hz").get<double>();
        const std::string ue = header.at("ue_orientation").get<std::string>();
        if (ue == "vertical")
            t.ue_orientation = UeOrientation::Vertical;
        else if (ue == "horizontal")
            t.ue_orientation = UeOrientation::Horizontal;
        else
            throw ChtError(ChtStatus::InvalidHeader, "unknown ue_orientation '" + ue + "'");
        t.layout = layout_from_json(header.at("layout"));
        if (header.contains("lost_mask")) {
            for (const auto &b : header.at("lost_mask"))
                t.lost_mask.push_back(b.get<int>() ? 1 : 0);
        }
    } catch (const json::exception &e) {
        throw ChtError(ChtStatus::InvalidHeader, std::string("header fields: ") + e.what());
    }

    if (t.n_time == 0 || t.n_freq == 0 || t.n_ant == 0)
        throw ChtError(ChtStatus::InvalidHeader, "dimensions must all be >= 1");
    if (!t.lost_mask.empty() && t.lost_mask.size() != t.n_time)
        throw ChtError(ChtStatus::InvalidHeader, "lost_mask length does not match N");
    if (t.layout.size() != t.n_ant)
        throw ChtError(ChtStatus::InvalidHeader, "layout antenna count does not match M");

    // Payload: the remaining bytes must hold exactly N*F*M float32 pairs.
    const std::streampos payload_start = in.tellg();
    in.seekg(0, std::ios::end);
    const std::streampos file_end = in.tellg();
    in.seekg(payload_start);
    const std::uint64_t payload_bytes =
        static_cast<std::uint64_t>(file_end - payload_start);

    if (payload_bytes % (2 * sizeof(float)) != 0)
        throw ChtError(ChtStatus::TruncatedPayload, "payload cut mid-coefficient");
    const std::uint64_t n_coeff = payload_bytes / (2 * sizeof(float));
    if (n_coeff != t.coeff_count())
        throw ChtError(ChtStatus::DimensionMismatch,
                       "payload holds " + std::to_string(n_coeff) + " coefficients, header "
                       "declares " + std::to_string(t.coeff_count()));

    t.data.resize(t.coeff_count());
    std::vector<float> buf(2u * 65536u);
    std::size_t written = 0;
    while (written < t.data.size()) {
        const std::size_t chunk = std::min<std::size_t>(65536u, t.data.size() - written);
        if (!in.read(reinterpret_cast<char *>(buf.data()),
                     static_cast<std::streamsize>(chunk * 2 * sizeof(float))))
            throw ChtError(ChtStatus::TruncatedPayload, "short read in payload");
        for (std::size_t i = 0; i < chunk; ++i)
            t.data[written + i] = {static_cast<double>(buf[2 * i]),
                                   static_cast<double>(buf[2 * i + 1])};
        written += chunk;
    }

    t.validate(true); // includes the finite-coefficients contract
    return t;
}

void write_cht(const ChannelTensor &tensor, const std::filesystem::path &path)
{
    tensor.validate();

    json header{{"n_time", tensor.n_time},
                {"n_freq", tensor.n_freq},
                {"n_ant", tensor.n_ant},
                {"carrier_freq_hz", tensor.carrier_freq_hz},
                {"bandwidth_hz", tensor.bandwidth_hz},
                {"rep_rate_hz", tensor.rep_rate_hz},
                {"ue_orientation", to_string(tensor.ue_orientation)},
                {"layout", layout_to_json(tensor.layout)}};
    if (!tensor.lost_mask.empty()) {
        json mask = json::array();
        for (auto b : tensor.lost_mask)
            mask.push_back(b ? 1 : 0);
        header["lost_mask"] = std::move(mask);
    }

    const std::string header_text = header.dump();
    if (header_text.size() > 0xffffffffull)
        throw DataError("write_cht: header too large");

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw DataError("cannot open '" + path.string() + "' for writing");

    out.write(kMagic, 4);
    const std::uint32_t header_len = static_cast<std::uint32_t>(header_text.size());
    out.write(reinterpret_cast<const char *>(&header_len), sizeof(header_len));
    out.write(header_text.data(), static_cast<std::streamsize>(header_text.size()));

    std::vector<float> buf(2u * 65536u);
    std::size_t written = 0;
    while (written < tensor.data.size()) {
        const std::size_t chunk = std::min<std::size_t>(65536u, tensor.data.size() - written);
        for (std::size_t i = 0; i < chunk; ++i) {
            buf[2 * i] = static_cast<float>(tensor.data[written + i].real());
            buf[2 * i + 1] = static_cast<float>(tensor.data[written + i].imag());
        }
        out.write(reinterpret_cast<const char *>(buf.data()),
                  static_cast<std::streamsize>(chunk * 2 * sizeof(float)));
        written += chunk;
    }
    if (!out)
        throw DataError("write_cht: short write to '" + path.string() + "'");
}

} // namespace chanhard
