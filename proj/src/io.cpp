#include "spatialkit/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>
#include <string>

#include <png.h>

namespace spatialkit {

namespace {

enum class Format { Png, Pgm, Ppm };

Format format_of(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext == ".png") return Format::Png;
    if (ext == ".pgm") return Format::Pgm;
    if (ext == ".ppm") return Format::Ppm;
    throw IoError(IoError::Kind::UnsupportedFormat,
                  "unsupported image format '" + ext + "' for " + path.string());
}

std::vector<std::uint8_t> read_all(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(IoError::Kind::MissingFile, "cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class PnmHeaderReader {
public:
    PnmHeaderReader(const std::vector<std::uint8_t>& bytes, const std::filesystem::path& path)
        : bytes_(bytes), path_(path) {}

    int next_int() {
        skip_space_and_comments();
        if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) fail("expected an integer");
        long v = 0;
        while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
            v = v * 10 + (bytes_[pos_++] - '0');
            if (v > (1L << 30)) fail("value too large");
        }
        return static_cast<int>(v);
    }

    // Exactly one whitespace byte separates the header from the raster.
    std::size_t raster_start() {
        if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) fail("missing separator before raster");
        return pos_ + 1;
    }

    [[noreturn]] void fail(const std::string& why) const {
        throw IoError(IoError::Kind::MalformedHeader, "malformed PNM header in " + path_.string() + ": " + why);
    }

private:
    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            if (std::isspace(bytes_[pos_])) {
                ++pos_;
            } else if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    const std::vector<std::uint8_t>& bytes_;
    const std::filesystem::path& path_;
    std::size_t pos_ = 2;
};

ImageBuffer load_pnm(const std::filesystem::path& path) {
    const auto bytes = read_all(path);
    PnmHeaderReader reader(bytes, path);
    if (bytes.size() < 2 || bytes[0] != 'P') reader.fail("bad magic");
    int channels = 0;
    if (bytes[1] == '5')
        channels = 1;
    else if (bytes[1] == '6')
        channels = 3;
    else
        throw IoError(IoError::Kind::UnsupportedFormat,
                      "only binary P5/P6 PNM files are supported: " + path.string());
    const int width = reader.next_int();
    const int height = reader.next_int();
    const int maxval = reader.next_int();
    if (width < 1 || height < 1) reader.fail("non-positive dimensions");
    if (maxval != 255)
        throw IoError(IoError::Kind::UnsupportedFormat,
                      "only maxval 255 is supported, got " + std::to_string(maxval) + " in " + path.string());
    const std::size_t start = reader.raster_start();
    const std::size_t count = static_cast<std::size_t>(width) * height * channels;
    if (bytes.size() < start + count) reader.fail("truncated raster");
    std::vector<std::uint8_t> data(bytes.begin() + start, bytes.begin() + start + count);
    return ImageBuffer(width, height, channels == 1 ? ColorSpace::Gray : ColorSpace::RGB, std::move(data));
}

ImageBuffer load_png(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) throw IoError(IoError::Kind::MissingFile, "cannot open " + path.string());
    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&image, path.string().c_str()))
        throw IoError(IoError::Kind::MalformedHeader, "cannot decode PNG " + path.string() + ": " + image.message);
    const bool color = (image.format & PNG_FORMAT_FLAG_COLOR) != 0;
    image.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
    std::vector<std::uint8_t> data(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, data.data(), 0, nullptr)) {
        png_image_free(&image);
        throw IoError(IoError::Kind::MalformedHeader, "cannot decode PNG " + path.string() + ": " + image.message);
    }
    return ImageBuffer(static_cast<int>(image.width), static_cast<int>(image.height),
                       color ? ColorSpace::RGB : ColorSpace::Gray, std::move(data));
}

ImageBuffer writable_form(const ImageBuffer& img) {
    switch (img.space()) {
    case ColorSpace::Gray:
    case ColorSpace::RGB: return img;
    case ColorSpace::Binary: return img.with_space(ColorSpace::Gray);
    case ColorSpace::BGR: return convert_color(img, ColorSpace::RGB);
    default:
        throw IoError(IoError::Kind::UnsupportedFormat,
                      "cannot store " + std::string(to_string(img.space())) + " images; convert to BGR first");
    }
}

}  // namespace

ImageBuffer load_image(const std::filesystem::path& path) {
    const Format fmt = format_of(path);
    if (!std::filesystem::exists(path)) throw IoError(IoError::Kind::MissingFile, "no such file: " + path.string());
    return fmt == Format::Png ? load_png(path) : load_pnm(path);
}

void save_image(const ImageBuffer& img, const std::filesystem::path& path) {
    const Format fmt = format_of(path);
    const ImageBuffer out = writable_form(img);
    if (fmt == Format::Png) {
        png_image image{};
        image.version = PNG_IMAGE_VERSION;
        image.width = static_cast<png_uint_32>(out.width());
        image.height = static_cast<png_uint_32>(out.height());
        image.format = out.channels() == 1 ? PNG_FORMAT_GRAY : PNG_FORMAT_RGB;
        if (!png_image_write_to_file(&image, path.string().c_str(), 0, out.data().data(), 0, nullptr))
            throw IoError(IoError::Kind::WriteFailed, "cannot write " + path.string() + ": " + image.message);
        return;
    }
    const int want = fmt == Format::Pgm ? 1 : 3;
    if (out.channels() != want)
        throw IoError(IoError::Kind::UnsupportedFormat,
                      path.extension().string() + " requires a " + std::to_string(want) + "-channel image");
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError(IoError::Kind::WriteFailed, "cannot write " + path.string());
    os << (want == 1 ? "P5" : "P6") << '\n' << out.width() << ' ' << out.height() << "\n255\n";
    os.write(reinterpret_cast<const char*>(out.data().data()), static_cast<std::streamsize>(out.data().size()));
    if (!os) throw IoError(IoError::Kind::WriteFailed, "short write to " + path.string());
}

}  // namespace spatialkit
