#include "pfdcp/image_io.hpp"

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include <cmath>
#include <stdexcept>

namespace pfdcp {

namespace {

unsigned char quantize(double v) {
    return static_cast<unsigned char>(std::lround(clamp01(v) * 255.0));
}

}  // namespace

RgbImage load_image(const std::string& path) {
    cv::Mat m = cv::imread(path, cv::IMREAD_UNCHANGED);
    if (m.empty())
        throw std::runtime_error("cannot read image: " + path);
    if (m.rows < 1 || m.cols < 1)
        throw std::runtime_error("zero-area image: " + path);

    double scale;
    switch (m.depth()) {
        case CV_8U: scale = 1.0 / 255.0; break;
        case CV_16U: scale = 1.0 / 65535.0; break;
        default:
            throw std::runtime_error("unsupported sample depth: " + path);
    }
    RgbImage out(m.cols, m.rows);
    for (int y = 0; y < m.rows; ++y) {
        for (int x = 0; x < m.cols; ++x) {
            double r, g, b;
            if (m.channels() == 1) {
                double v = (m.depth() == CV_8U) ? m.at<unsigned char>(y, x)
                                                : m.at<unsigned short>(y, x);
                r = g = b = v * scale;
            } else if (m.channels() == 3) {
                if (m.depth() == CV_8U) {
                    const cv::Vec3b& p = m.at<cv::Vec3b>(y, x);  // BGR
                    b = p[0] * scale; g = p[1] * scale; r = p[2] * scale;
                } else {
                    const cv::Vec3w& p = m.at<cv::Vec3w>(y, x);
                    b = p[0] * scale; g = p[1] * scale; r = p[2] * scale;
                }
            } else if (m.channels() == 4) {  // alpha dropped
                if (m.depth() == CV_8U) {
                    const cv::Vec4b& p = m.at<cv::Vec4b>(y, x);
                    b = p[0] * scale; g = p[1] * scale; r = p[2] * scale;
                } else {
                    const cv::Vec4w& p = m.at<cv::Vec4w>(y, x);
                    b = p[0] * scale; g = p[1] * scale; r = p[2] * scale;
                }
            } else {
                throw std::runtime_error("unsupported channel count: " + path);
            }
            out.at(y, x, 0) = r;
            out.at(y, x, 1) = g;
            out.at(y, x, 2) = b;
        }
    }
    return out;
}

void save_image(const RgbImage& img, const std::string& path) {
    cv::Mat m(img.height, img.width, CV_8UC3);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            m.at<cv::Vec3b>(y, x) = cv::Vec3b(quantize(img.at(y, x, 2)),
                                              quantize(img.at(y, x, 1)),
                                              quantize(img.at(y, x, 0)));
    if (!cv::imwrite(path, m))
        throw std::runtime_error("cannot write image: " + path);
}

void save_image(const GrayImage& img, const std::string& path) {
    cv::Mat m(img.height, img.width, CV_8UC1);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            m.at<unsigned char>(y, x) = quantize(img.at(y, x));
    if (!cv::imwrite(path, m))
        throw std::runtime_error("cannot write image: " + path);
}

}  // namespace pfdcp
