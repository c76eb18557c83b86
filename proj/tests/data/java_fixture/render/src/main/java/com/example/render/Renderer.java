package com.example.render;

import com.example.core.Model;

public class Renderer {
    private final Theme theme = Theme.dark();

    public String draw(Model model) {
        return theme.apply("model:" + model.size());
    }
}
