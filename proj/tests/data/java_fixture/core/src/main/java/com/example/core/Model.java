package com.example.core;

import java.util.ArrayList;
import java.util.List;

public class Model {
    private final List<String> entries = new ArrayList<>();

    public void touch() {
        entries.add("touched");
    }

    public int size() {
        return entries.size();
    }
}
