// Copyright 2026 the inq authors
// SPDX-License-Identifier: Apache-2.0

#include "inq/imageio.hpp"

#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

namespace inq {

namespace {

cv::Mat to_mat_bgr(const ImageU8& img) {
    CV_Assert(img.channels == 3);
    cv::Mat rgb(img.height, img.width, CV_8UC3, const_cast<uint8_t*>(img.data.data()));
    cv::Mat bgr;
    cv::cvtColor(rgb, bgr, cv::COLOR_RGB2BGR);
    return bgr;
}

ImageU8 from_mat_bgr(const cv::Mat& bgr) {
    cv::Mat rgb;
    cv::cvtColor(bgr, rgb, cv::COLOR_BGR2RGB);
    ImageU8 out = ImageU8::make(rgb.cols, rgb.rows, 3);
    if (rgb.isContinuous()) {
        std::memcpy(out.data.data(), rgb.data, out.data.size());
    } else {
        for (int y = 0; y < rgb.rows; ++y)
            std::memcpy(&out.data[size_t(y) * rgb.cols * 3], rgb.ptr(y), size_t(rgb.cols) * 3);
    }
    return out;
}

}  // namespace

ImageU8 load_image(const std::string& path) {
    cv::Mat bgr = cv::imread(path, cv::IMREAD_COLOR);
    if (bgr.empty()) throw IoError("cannot decode image: " + path);
    return from_mat_bgr(bgr);
}

void save_png(const std::string& path, const ImageU8& img) {
    if (!cv::imwrite(path, to_mat_bgr(img))) throw IoError("cannot write image: " + path);
}

std::vector<uint8_t> encode_png(const ImageU8& img) {
    std::vector<uint8_t> buf;
    if (!cv::imencode(".png", to_mat_bgr(img), buf)) throw IoError("PNG encoding failed");
    return buf;
}

ImageU8 resize_bilinear(const ImageU8& img, int out_w, int out_h) {
    cv::Mat src = to_mat_bgr(img);
    cv::Mat dst;
    cv::resize(src, dst, cv::Size(out_w, out_h), 0, 0, cv::INTER_LINEAR);
    return from_mat_bgr(dst);
}

}  // namespace inq
